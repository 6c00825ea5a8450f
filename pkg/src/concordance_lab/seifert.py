"""Seifert-form invariants: Alexander polynomial, Arf, signatures, lattice searches."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .matrixalg import Matrix, SignatureError, det_laurent, hermitian_signature, int_det
from .ring import (
    ONE,
    T,
    LaurentPoly,
    associated_z,
    divmod_laurent,
    exact_div,
    irreducible_factors,
    normalize_units,
    primitive_associate,
    squarefree_part,
)


class SeifertFormError(ValueError):
    pass


class RootFindingError(ArithmeticError):
    pass


class IndeterminateError(ArithmeticError):
    """A signature function was queried at (or inside the enclosure of) a jump."""


@dataclass(frozen=True)
class SeifertForm:
    A: Matrix

    def __post_init__(self):
        A = self.A
        if not isinstance(A, Matrix):
            object.__setattr__(self, "A", A := Matrix(A))
        if not A.is_square():
            raise SeifertFormError(f"Seifert matrix must be square, got {A.nrows}x{A.ncols}")
        if A.nrows % 2:
            raise SeifertFormError(f"odd dimension {A.nrows}: a Seifert matrix has even size 2g")
        if any(not isinstance(x, int) for r in A.rows for x in r):
            raise SeifertFormError("Seifert matrix entries must be integers")
        d = int_det(A - A.T)
        if d != 1:
            raise SeifertFormError(f"det(A - A^T) = {d}, but the antisymmetrization must be unimodular (det 1)")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "SeifertForm":
        return cls(Matrix(rows, ncols=0))

    @classmethod
    def unknot(cls) -> "SeifertForm":
        return cls(Matrix((), ncols=0))

    @property
    def size(self) -> int:
        return self.A.nrows

    @property
    def genus(self) -> int:
        return self.A.nrows // 2

    def tolist(self):
        return self.A.tolist()


def presentation_matrix(S: SeifertForm) -> Matrix:
    """tA^T - A; its rows are relations among the dual generators of the Alexander module."""
    A = S.A
    return Matrix(((T * a - b for a, b in zip(ra, rb)) for ra, rb in zip(A.T.rows, A.rows)), ncols=A.ncols)


def alexander_polynomial(S: SeifertForm) -> LaurentPoly:
    A = S.A
    M = Matrix(((T * a - b for a, b in zip(ra, rb)) for ra, rb in zip(A.rows, A.T.rows)), ncols=A.ncols)
    return normalize_units(det_laurent(M))


def arf_invariant(S: SeifertForm) -> int:
    """0 iff Delta(-1) = +-1 mod 8."""
    v = abs(int(alexander_polynomial(S)(-1)))
    return 0 if v % 8 in (1, 7) else 1


def connected_sum(S1: SeifertForm, S2: SeifertForm) -> SeifertForm:
    return SeifertForm(Matrix.block_diag(S1.A, S2.A))


def inverse(S: SeifertForm) -> SeifertForm:
    """Reverse mirror image, represented by -A^T."""
    return SeifertForm(-S.A.T)


def levine_tristram(S: SeifertForm, r) -> int:
    return hermitian_signature(S.A, r)


# -- signature functions -------------------------------------------------------

Num = Union[Fraction, float]


@dataclass(frozen=True, order=True)
class Breakpoint:
    """Location of a possible jump, r in [lo, hi]; exact when lo == hi is a Fraction."""

    lo: Num
    hi: Num

    @classmethod
    def exact(cls, r) -> "Breakpoint":
        r = Fraction(r)
        return cls(r, r)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.lo, Fraction) and self.lo == self.hi

    def contains(self, r) -> bool:
        return self.lo <= r <= self.hi

    def mirror(self) -> "Breakpoint":
        if self.is_exact:
            return Breakpoint.exact(1 - self.lo)
        return Breakpoint(1 - self.hi, 1 - self.lo)

    def __str__(self):
        if self.is_exact:
            return str(self.lo)
        return f"[{float(self.lo):.15g}, {float(self.hi):.15g}]"


@dataclass(frozen=True)
class SignatureFunction:
    """Piecewise-constant r -> sigma_{exp(2 pi i r)} on (0, 1).

    ``initial`` is the value on (0, first breakpoint); each jump records the
    value to the right of its breakpoint.  Breakpoints where the value does not
    change are kept, since they are roots of the Alexander polynomial.
    """

    initial: int
    jumps: Tuple[Tuple[Breakpoint, int], ...] = ()

    @classmethod
    def zero(cls) -> "SignatureFunction":
        return cls(0, ())

    @classmethod
    def from_steps(cls, steps: Sequence[Tuple[object, int]]) -> "SignatureFunction":
        """Build from ``[(0, v0), (r1, v1), ...]``: value v_k on (r_k, r_{k+1})."""
        if not steps:
            return cls.zero()
        (r0, v0), rest = steps[0], steps[1:]
        if Fraction(r0) != 0:
            raise ValueError("the first step must start at 0")
        jumps = []
        prev = Fraction(0)
        for r, v in rest:
            r = Fraction(r)
            if not prev < r < 1:
                raise ValueError("step locations must be strictly increasing inside (0, 1)")
            jumps.append((Breakpoint.exact(r), int(v)))
            prev = r
        return cls(int(v0), tuple(jumps))

    def steps(self):
        out = [(Fraction(0), self.initial)]
        for bp, v in self.jumps:
            if not bp.is_exact:
                raise ValueError("steps() requires exact breakpoints")
            out.append((bp.lo, v))
        return out

    @property
    def breakpoints(self) -> Tuple[Breakpoint, ...]:
        return tuple(bp for bp, _ in self.jumps)

    @property
    def arc_values(self) -> Tuple[int, ...]:
        return (self.initial,) + tuple(v for _, v in self.jumps)

    @property
    def is_exact(self) -> bool:
        return all(bp.is_exact for bp in self.breakpoints)

    def arc_midpoints(self) -> List[Fraction]:
        edges = [Fraction(0)] + [x for bp in self.breakpoints for x in (Fraction(bp.lo), Fraction(bp.hi))] + [Fraction(1)]
        return [(edges[2 * k] + edges[2 * k + 1]) / 2 for k in range(len(self.jumps) + 1)]

    def value_at(self, r) -> int:
        val = self.initial
        for bp, v in self.jumps:
            if bp.contains(r):
                raise IndeterminateError(f"r = {r} lies on the jump at {bp}")
            if bp.hi < r:
                val = v
            else:
                break
        return val

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.arc_values)

    def is_symmetric(self) -> bool:
        vals = self.arc_values
        mirrored = sorted((bp.mirror() for bp in self.breakpoints), key=lambda b: float(b.lo))
        if vals != vals[::-1] or len(mirrored) != len(self.breakpoints):
            return False
        # float enclosures only agree up to rounding after mirroring
        return all(
            abs(a.lo - b.lo) < 1e-12 and abs(a.hi - b.hi) < 1e-12
            for a, b in zip(mirrored, self.breakpoints)
        )

    def __neg__(self) -> "SignatureFunction":
        return SignatureFunction(-self.initial, tuple((bp, -v) for bp, v in self.jumps))

    def __add__(self, other: "SignatureFunction") -> "SignatureFunction":
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        merged: List[Breakpoint] = []
        for bp in bps:
            if merged and bp.lo <= merged[-1].hi:
                last = merged.pop()
                bp = Breakpoint(min(last.lo, bp.lo), max(last.hi, bp.hi))
            merged.append(bp)
        probe = SignatureFunction(0, tuple((bp, 0) for bp in merged))
        mids = probe.arc_midpoints()
        vals = [self.value_at(m) + other.value_at(m) for m in mids]
        return SignatureFunction(vals[0], tuple(zip(merged, vals[1:])))

    def __str__(self):
        parts = [f"{self.initial} on (0, {self.breakpoints[0] if self.jumps else 1})"]
        for k, (bp, v) in enumerate(self.jumps):
            nxt = self.jumps[k + 1][0] if k + 1 < len(self.jumps) else 1
            parts.append(f"{v} on ({bp}, {nxt})")
        return "; ".join(parts)


def _euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentPoly:
    p = T ** n - 1
    for d in range(1, n):
        if n % d == 0:
            p = exact_div(p, cyclotomic(d))
    return p


def _compact_form(p: LaurentPoly) -> List[Fraction]:
    """For palindromic p of degree 2n, coefficients of h with p = t^n h(t + 1/t)."""
    q = p.shift(-p.low)
    deg = q.high
    if deg % 2 or any(q.coeff(k) != q.coeff(deg - k) for k in range(deg + 1)):
        raise RootFindingError(f"{p} is not palindromic")
    n = deg // 2
    # D_0 = 2, D_1 = x, D_{j+1} = x D_j - D_{j-1};  t^j + t^-j = D_j(t + 1/t)
    D = [[Fraction(2)], [Fraction(0), Fraction(1)]]
    for j in range(2, n + 1):
        nxt = [Fraction(0)] + D[j - 1]
        for i, c in enumerate(D[j - 2]):
            nxt[i] -= c
        D.append(nxt)
    h = [Fraction(0)] * (n + 1)
    h[0] += q.coeff(n)
    for j in range(1, n + 1):
        for i, c in enumerate(D[j]):
            h[i] += q.coeff(n + j) * c
    return h


ROOT_EPS = Fraction(1, 10 ** 15)


def unit_circle_roots(delta: LaurentPoly) -> List[Breakpoint]:
    """Locations r in (0, 1) of the roots of delta on the unit circle, sorted.

    Cyclotomic factors are detected by exact division and give exact rational
    breakpoints; the remaining real roots of the compact form x = t + 1/t in
    (-2, 2) are isolated by sympy with rational endpoints.
    """
    import sympy

    sq = squarefree_part(delta)
    out: List[Breakpoint] = []
    span = sq.span
    n = 1
    while span and n <= 2 * span * span + 2:
        if _euler_phi(n) <= sq.span:
            q, r = divmod_laurent(sq, cyclotomic(n))
            if r:
                n += 1
                continue
            sq = primitive_associate(q)
            out.extend(Breakpoint.exact(Fraction(k, n)) for k in range(1, n) if math.gcd(k, n) == 1)
            continue
        n += 1
    if sq.span:
        h = _compact_form(sq)
        x = sympy.Symbol("x")
        poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(h)), x)
        for (a, b), _ in poly.intervals(eps=ROOT_EPS):
            a, b = Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))
            if b <= -2 or a >= 2:
                continue
            if not (-2 < a and b < 2):
                raise RootFindingError("root enclosure straddles t = +-1")
            # arccos is decreasing; pad for floating rounding
            lo = math.acos(float(b) / 2) / (2 * math.pi) - 1e-15
            hi = math.acos(float(a) / 2) / (2 * math.pi) + 1e-15
            out.append(Breakpoint(lo, hi))
            out.append(Breakpoint(1 - hi, 1 - lo))
    return sorted(out, key=lambda bp: (float(bp.lo), float(bp.hi)))


def signature_function(S: SeifertForm) -> SignatureFunction:
    if S.size == 0:
        return SignatureFunction.zero()
    bps = unit_circle_roots(alexander_polynomial(S))
    probe = SignatureFunction(0, tuple((bp, 0) for bp in bps))
    vals = [levine_tristram(S, m) for m in probe.arc_midpoints()]
    sig = SignatureFunction(vals[0], tuple(zip(bps, vals[1:])))
    if vals != vals[::-1]:
        raise RootFindingError("sampled signature function is not symmetric under r -> 1 - r")
    return sig


# -- Fox-Milnor -----------------------------------------------------------------

def _reciprocal(p: LaurentPoly) -> LaurentPoly:
    return normalize_units(p.conj())


def fox_milnor_factor(S: SeifertForm) -> Optional[LaurentPoly]:
    """Integer f with Delta = +-t^k f(t) f(t^-1), or None when no such f exists."""
    delta = alexander_polynomial(S)
    f = ONE
    seen = set()
    for p, e in irreducible_factors(delta):
        p = normalize_units(p)
        if p in seen:
            continue
        rp = _reciprocal(p)
        if rp == p:
            if e % 2:
                return None
            f = f * p ** (e // 2)
        else:
            seen.add(rp)
            f = f * p ** e
    if not associated_z(f * f.conj(), delta):
        raise ArithmeticError("Fox-Milnor certificate failed to verify")
    return normalize_units(f)


def fox_milnor(S: SeifertForm) -> bool:
    """True iff Delta factors as f(t) f(t^-1) up to units."""
    return fox_milnor_factor(S) is not None


# -- integer lattice helpers ---------------------------------------------------

def _bil(A: Matrix, v, w) -> int:
    return sum(v[i] * A.rows[i][j] * w[j] for i in range(len(v)) if v[i] for j in range(len(w)) if w[j])


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_reduce(rows: Sequence[Sequence[int]]):
    """Unimodular V, V^-1 (n x n) with rows @ V = [H | 0], H lower triangular g x g."""
    B = [list(r) for r in rows]
    g, n = len(B), len(B[0])
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(g):
        for j in range(i + 1, n):
            a, b = B[i][i], B[i][j]
            if b == 0:
                continue
            d, x, y = _xgcd(a, b)
            # [col_i, col_j] <- [col_i, col_j] @ [[x, -b/d], [y, a/d]]
            p, q = -b // d, a // d
            for M in (B, V):
                for r in M:
                    ci, cj = r[i], r[j]
                    r[i], r[j] = x * ci + y * cj, p * ci + q * cj
            # inverse of [[x, p], [y, q]] is [[q, -p], [-y, x]] (det 1)
            ri, rj = Vi[i], Vi[j]
            Vi[i] = [q * u - p * w for u, w in zip(ri, rj)]
            Vi[j] = [-y * u + x * w for u, w in zip(ri, rj)]
    return B, V, Vi


def is_primitive(rows: Sequence[Sequence[int]]) -> bool:
    """Whether the rows span a rank-g direct summand of Z^n."""
    B, _, _ = column_reduce(rows)
    g = len(rows)
    return abs(math.prod(B[i][i] for i in range(g))) == 1


def complete_to_unimodular(rows: Sequence[Sequence[int]]) -> Matrix:
    """Unimodular P whose first g columns are the given primitive rows."""
    g, n = len(rows), len(rows[0])
    B, _, Vi = column_reduce(rows)
    if abs(math.prod(B[i][i] for i in range(g))) != 1:
        raise ValueError("rows do not span a direct summand")
    # rows = [H | 0] Vi, so rows of Vi beyond g complete the basis
    cols = [list(r) for r in rows] + [Vi[k] for k in range(g, n)]
    return Matrix(zip(*cols), ncols=n)


def row_hnf(rows: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Canonical Hermite normal form of the row lattice (used as a dedup key)."""
    M = [list(r) for r in rows]
    m, n = len(M), len(M[0])
    piv_row = 0
    for c in range(n):
        if piv_row >= m:
            break
        for i in range(piv_row + 1, m):
            while M[i][c]:
                q = M[piv_row][c] // M[i][c]
                M[piv_row] = [a - q * b for a, b in zip(M[piv_row], M[i])]
                M[piv_row], M[i] = M[i], M[piv_row]
        if M[piv_row][c] == 0:
            continue
        if M[piv_row][c] < 0:
            M[piv_row] = [-a for a in M[piv_row]]
        for i in range(piv_row):
            q = M[i][c] // M[piv_row][c]
            M[i] = [a - q * b for a, b in zip(M[i], M[piv_row])]
        piv_row += 1
    return tuple(tuple(r) for r in M)


# -- metabolizer / hyperbolic searches ------------------------------------------

@dataclass(frozen=True)
class LagrangianWitness:
    basis_change: Matrix
    kind: str  # "metabolic" or "hyperbolic"

    def congruent(self, S: SeifertForm) -> Matrix:
        P = self.basis_change
        return P.T @ S.A @ P

    def verify(self, S: SeifertForm) -> bool:
        P = self.basis_change
        if abs(int_det(P)) != 1:
            return False
        C = self.congruent(S)
        g = S.genus
        upper = all(C[i, j] == 0 for i in range(g) for j in range(g))
        if self.kind == "metabolic":
            return upper
        lower = all(C[i, j] == 0 for i in range(g, 2 * g) for j in range(g, 2 * g))
        return upper and lower


def _candidate_vectors(A: Matrix, bound: int) -> List[Tuple[int, ...]]:
    n = A.nrows
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        nz = next((x for x in v if x), 0)
        if nz <= 0 or math.gcd(*v) != 1:
            continue
        if _bil(A, v, v) == 0:
            out.append(v)
    out.sort(key=lambda v: (sum(map(abs, v)), tuple(-x for x in v)))
    return out


def isotropic_lattices(S: SeifertForm, bound: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Primitive rank-g sublattices on which the Seifert form vanishes, spanned by
    vectors with entries in [-bound, bound], in deterministic order and deduplicated."""
    A, g = S.A, S.genus
    cands = _candidate_vectors(A, bound)
    compat = [
        [j for j in range(i + 1, len(cands))
         if _bil(A, cands[i], cands[j]) == 0 and _bil(A, cands[j], cands[i]) == 0]
        for i in range(len(cands))
    ]
    compat_sets = [set(c) for c in compat]
    seen = set()

    def extend(chosen: List[int], allowed: List[int]):
        if len(chosen) == g:
            basis = [cands[k] for k in chosen]
            if is_primitive(basis):
                key = row_hnf(basis)
                if key not in seen:
                    seen.add(key)
                    yield tuple(basis)
            return
        for k in allowed:
            yield from extend(chosen + [k], [j for j in allowed if j > k and j in compat_sets[k]])

    for i in range(len(cands)):
        yield from extend([i], compat[i])


def _has_zero_blocks(S: SeifertForm, both: bool) -> bool:
    g = S.genus
    A = S.A
    if any(A[i, j] for i in range(g) for j in range(g)):
        return False
    return not both or not any(A[i, j] for i in range(g, 2 * g) for j in range(g, 2 * g))


def find_metabolizer(S: SeifertForm, entry_bound: int) -> Optional[LagrangianWitness]:
    """Unimodular P (entries of the half-basis bounded by entry_bound) with the
    upper-left g x g block of P^T A P zero; None means nothing found at this bound."""
    if entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    if S.genus == 0 or _has_zero_blocks(S, both=False):
        return LagrangianWitness(Matrix.identity(S.size), "metabolic")
    for L in isotropic_lattices(S, entry_bound):
        w = LagrangianWitness(complete_to_unimodular(L), "metabolic")
        if w.verify(S):
            return w
    return None


def find_hyperbolic_basis(S: SeifertForm, entry_bound: int) -> Optional[LagrangianWitness]:
    """Unimodular P with entries in [-entry_bound, entry_bound] whose congruence
    P^T A P has both diagonal g x g blocks zero."""
    if entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    if S.genus == 0 or _has_zero_blocks(S, both=True):
        return LagrangianWitness(Matrix.identity(S.size), "hyperbolic")
    lattices = list(isotropic_lattices(S, entry_bound))
    for L1 in lattices:
        for L2 in lattices:
            if L1 is L2:
                continue
            cols = list(L1) + list(L2)
            if abs(int_det(Matrix(cols))) == 1:
                w = LagrangianWitness(Matrix(zip(*cols)), "hyperbolic")
                if w.verify(S):
                    return w
    return None


def find_congruence(S1: SeifertForm, S2: SeifertForm, entry_bound: int) -> Optional[Matrix]:
    """Unimodular P with entries in [-entry_bound, entry_bound] and P^T A1 P = A2."""
    A1, A2 = S1.A, S2.A
    n = A1.nrows
    if A2.nrows != n:
        return None
    vecs = [v for v in itertools.product(range(-entry_bound, entry_bound + 1), repeat=n) if any(v)]
    by_norm = {}
    for v in vecs:
        by_norm.setdefault(_bil(A1, v, v), []).append(v)

    def extend(cols: List[Tuple[int, ...]]):
        j = len(cols)
        if j == n:
            return cols if abs(int_det(Matrix(zip(*cols)))) == 1 else None
        for v in by_norm.get(A2[j, j], []):
            if all(_bil(A1, c, v) == A2[i, j] and _bil(A1, v, c) == A2[j, i] for i, c in enumerate(cols)):
                found = extend(cols + [v])
                if found:
                    return found
        return None

    cols = extend([])
    if cols is None:
        return None
    P = Matrix(zip(*cols))
    assert P.T @ A1 @ P == A2
    return P
