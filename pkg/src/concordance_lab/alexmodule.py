"""Rational Alexander modules and Blanchfield forms.

Conventions: the module of a Seifert form A is generated by the duals of the
surface basis with relations the rows of tA^T - A, so elements are row
vectors over Q[t, t^-1] in "presentation coordinates".  The Blanchfield form
is the matrix (1 - t)(tA - A^T)^-1 and pairs u, v as conj(u) B v^T.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .matrixalg import Matrix, invert_over_fractions, smith_normal_form
from .ring import (
    ONE,
    T,
    ZERO,
    LaurentPoly,
    RationalFn,
    as_poly,
    associated,
    exact_div,
    irreducible_factors,
    poly_mod,
    primitive_associate,
    reduce_mod_lambda,
    xgcd_laurent,
)
from .seifert import SeifertForm, alexander_polynomial, presentation_matrix

Vector = Tuple[LaurentPoly, ...]


class UnsupportedModuleShape(ValueError):
    pass


def _vec(v) -> Vector:
    return tuple(as_poly(x) for x in v)


@dataclass(frozen=True)
class AlexanderModule:
    """Direct sum of cyclic modules Q[t, t^-1]/(orders[i]).

    ``basis_change`` has one column per cyclic piece: module coordinates of a
    presentation vector v are v @ basis_change, reduced mod the orders.
    ``generators[i]`` is a presentation vector generating piece i.
    """

    orders: Tuple[LaurentPoly, ...]
    generator_names: Tuple[str, ...]
    basis_change: Matrix
    generators: Tuple[Vector, ...]
    split: bool = False

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> LaurentPoly:
        p = ONE
        for d in self.orders:
            p = p * d
        return p

    def coordinates(self, v) -> Vector:
        v = _vec(v)
        if len(v) != self.basis_change.nrows:
            raise ValueError("presentation vector has the wrong length")
        out = []
        for j, d in enumerate(self.orders):
            c = ZERO
            for i, x in enumerate(v):
                if x:
                    c = c + x * self.basis_change[i, j]
            out.append(poly_mod(c, d))
        return tuple(out)

    def reduce(self, coords) -> Vector:
        return tuple(poly_mod(as_poly(c), d) for c, d in zip(coords, self.orders))

    def to_presentation(self, coords) -> Vector:
        n = self.basis_change.nrows
        acc = [ZERO] * n
        for c, g in zip(_vec(coords), self.generators):
            if c:
                acc = [a + c * x for a, x in zip(acc, g)]
        return tuple(acc)

    def is_zero(self, coords) -> bool:
        return all(c.is_zero() for c in self.reduce(coords))


@dataclass(frozen=True)
class BlanchfieldForm:
    matrix: Matrix  # entries RationalFn, already reduced mod Q[t, t^-1]

    @property
    def size(self) -> int:
        return self.matrix.nrows

    def is_hermitian(self) -> bool:
        n = self.size
        return all(
            reduce_mod_lambda(self.matrix[i, j] - self.matrix[j, i].conj()).is_zero()
            for i in range(n) for j in range(n)
        )


@dataclass(frozen=True)
class Submodule:
    generators: Tuple[Vector, ...]  # module coordinates
    pieces: Tuple[int, ...] = ()
    label: str = ""

    def __str__(self):
        return self.label or f"<{len(self.generators)} generators>"


# -- decomposition ------------------------------------------------------------

def decompose(S: SeifertForm) -> AlexanderModule:
    """Cyclic decomposition from the Smith form of the presentation matrix."""
    R = presentation_matrix(S)
    n = R.nrows
    if n == 0:
        return AlexanderModule((), (), Matrix((), ncols=0), ())
    snf = smith_normal_form(R)
    keep = [i for i, d in enumerate(snf.D) if not d.is_unit()]
    if any(snf.D[i].is_zero() for i in keep):
        raise UnsupportedModuleShape("presentation matrix is singular")
    orders = tuple(snf.D[i] for i in keep)
    basis = Matrix((tuple(snf.V[r, j] for j in keep) for r in range(n)), ncols=len(keep))
    gens = tuple(snf.V_inv.row(j) for j in keep)
    names = tuple(f"g{k + 1}" for k in range(len(keep)))
    return AlexanderModule(orders, names, basis, gens)


def _split_order(d: LaurentPoly) -> List[LaurentPoly]:
    """Pairwise-coprime prime-power factors of d, ordered as sympy returns them."""
    return [primitive_associate(p ** e) for p, e in irreducible_factors(d)]


def crt_split(M: AlexanderModule) -> AlexanderModule:
    """Refine each cyclic piece Q[t,t^-1]/(fg), f, g coprime, into Q/(f) + Q/(g)."""
    orders, names, gens, cols = [], [], [], []
    changed = False
    n = M.basis_change.nrows
    for k, d in enumerate(M.orders):
        col = M.basis_change.col(k)
        parts = _split_order(d)
        if len(parts) <= 1:
            orders.append(d)
            names.append(M.generator_names[k])
            gens.append(M.generators[k])
            cols.append(col)
            continue
        changed = True
        for idx, f in enumerate(parts):
            cof = ONE
            for h in parts[:idx] + parts[idx + 1:]:
                cof = cof * h
            g, s, u = xgcd_laurent(f, cof)
            assert g == ONE
            idem = poly_mod(u * cof, d)  # 1 mod f, 0 mod cof
            orders.append(f)
            names.append(f"{M.generator_names[k]}.{idx + 1}")
            gens.append(tuple(idem * x for x in M.generators[k]))
            cols.append(col)
    basis = Matrix(zip(*cols), ncols=len(cols)) if cols else Matrix(((),) * n, ncols=0)
    return AlexanderModule(tuple(orders), tuple(names), basis, tuple(gens), split=changed)


# -- Blanchfield form ----------------------------------------------------------

def blanchfield(S: SeifertForm) -> BlanchfieldForm:
    A = S.A
    if A.nrows == 0:
        return BlanchfieldForm(Matrix((), ncols=0))
    M = Matrix(((T * a - b for a, b in zip(ra, rb)) for ra, rb in zip(A.rows, A.T.rows)), ncols=A.ncols)
    inv = invert_over_fractions(M)
    one_minus_t = RationalFn(ONE - T)
    return BlanchfieldForm(inv.map(lambda x: reduce_mod_lambda(one_minus_t * x)))


def pair(B: BlanchfieldForm, u, v) -> RationalFn:
    """conj(u) B v^T modulo Q[t, t^-1], for presentation vectors u, v."""
    u, v = _vec(u), _vec(v)
    n = B.size
    if len(u) != n or len(v) != n:
        raise ValueError(f"expected vectors of length {n}")
    acc = RationalFn(ZERO)
    for i, a in enumerate(u):
        if not a:
            continue
        ca = a.conj()
        for j, b in enumerate(v):
            if b and B.matrix[i, j]:
                acc = acc + B.matrix[i, j] * (ca * b)
    return reduce_mod_lambda(acc)


def pair_coords(M: AlexanderModule, B: BlanchfieldForm, x, y) -> RationalFn:
    return pair(B, M.to_presentation(x), M.to_presentation(y))


# -- submodule calculus ---------------------------------------------------------

def _stacked(M: AlexanderModule, classes) -> Matrix:
    rows = [tuple(as_poly(c) for c in M.reduce(x)) for x in classes]
    rows += [tuple(d if i == j else ZERO for j in range(M.rank)) for i, d in enumerate(M.orders)]
    return Matrix(rows, ncols=M.rank)


def quotient_order(M: AlexanderModule, classes) -> LaurentPoly:
    """Order of M / span(classes), normalized; 1 iff the classes generate M."""
    if M.rank == 0:
        return ONE
    snf = smith_normal_form(_stacked(M, classes))
    p = ONE
    for d in snf.D:
        p = p * d
    return primitive_associate(p)


def generates(M: AlexanderModule, classes) -> bool:
    classes = list(classes)
    if M.rank and not classes:
        return False
    return quotient_order(M, classes) == ONE


def submodule_order(M: AlexanderModule, classes) -> LaurentPoly:
    q = quotient_order(M, classes)
    return primitive_associate(exact_div(primitive_associate(M.order), q))


def contains(M: AlexanderModule, classes, x) -> bool:
    classes = list(classes)
    return associated(quotient_order(M, classes), quotient_order(M, classes + [x]))


def _check_split_shape(M: AlexanderModule) -> AlexanderModule:
    M = crt_split(M) if M.rank else M
    for i, d in enumerate(M.orders):
        facs = irreducible_factors(d)
        if len(facs) != 1 or facs[0][1] != 1:
            raise UnsupportedModuleShape(f"cyclic order {d} is not square-free irreducible")
        for e in M.orders[:i]:
            if associated(e, d):
                raise UnsupportedModuleShape(f"repeated cyclic order {d}: pieces are not pairwise coprime")
    return M


def self_annihilating_submodules(M: AlexanderModule, B: BlanchfieldForm) -> List[Submodule]:
    """All X with X = X^perp, for modules split into coprime irreducible pieces.

    Every submodule of such a module is a sum of pieces; X is self-annihilating
    iff the form vanishes on it and ord(X) conj(ord(X)) equals the module order.
    """
    M = _check_split_shape(M)
    n = M.rank
    unit = [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]
    delta = M.order
    out = []
    for mask in range(1 << n):
        idx = tuple(i for i in range(n) if mask >> i & 1)
        gens = [unit[i] for i in idx]
        ordX = ONE
        for i in idx:
            ordX = ordX * M.orders[i]
        if not associated(ordX * ordX.conj(), delta):
            continue
        if all(pair_coords(M, B, x, y).is_zero() for x in gens for y in gens):
            label = "+".join(M.generator_names[i] for i in idx) or "0"
            out.append(Submodule(tuple(gens), idx, label))
    return out


def orthogonal_pieces(M: AlexanderModule, B: BlanchfieldForm, X: Submodule) -> Tuple[int, ...]:
    """Pieces of a coprime split module spanning X^perp."""
    n = M.rank
    unit = [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]
    return tuple(i for i in range(n) if all(pair_coords(M, B, x, unit[i]).is_zero() for x in X.generators))
