"""Exact matrices over Z, Q[t, t^-1] and Q(t).

:class:`Matrix` is a small immutable row-major container used for integer
Seifert matrices and Laurent presentation matrices alike; entries only need
ring operations.  Elimination routines work on plain lists internally.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .ring import (
    ONE,
    ZERO,
    LaurentPoly,
    RationalFn,
    as_poly,
    divmod_laurent,
    eval_unit,
    exact_div,
    primitive_associate,
)


class MatrixError(ValueError):
    pass


class SingularMatrixError(MatrixError):
    pass


class SignatureError(ArithmeticError):
    """Raised when a Hermitian form is (numerically) degenerate at the requested point."""


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise MatrixError("ragged matrix rows")
        else:
            width = ncols or 0
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> "Matrix":
        return cls(tuple(one if i == j else zero for j in range(n)) for i in range(n))

    @classmethod
    def zeros(cls, m: int, n: int, zero=0) -> "Matrix":
        return cls(((zero,) * n for _ in range(m)), ncols=n)

    @classmethod
    def block_diag(cls, *blocks: "Matrix", zero=0) -> "Matrix":
        n = sum(b.ncols for b in blocks)
        out = []
        off = 0
        for b in blocks:
            for r in b.rows:
                out.append((zero,) * off + tuple(r) + (zero,) * (n - off - b.ncols))
            off += b.ncols
        return cls(out, ncols=n)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self.rows), ncols=self.nrows) if self.rows else Matrix((), ncols=0)

    def map(self, f: Callable) -> "Matrix":
        return Matrix((tuple(f(x) for x in r) for r in self.rows), ncols=self.ncols)

    def tolist(self) -> List[list]:
        return [list(r) for r in self.rows]

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise MatrixError("shape mismatch in addition")
        return Matrix((tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: c * x)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix(out, ncols=other.ncols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({[list(map(str, r)) for r in self.rows]})"

    def __str__(self):
        if not self.rows:
            return "[]"
        cells = [[str(x) for x in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


def to_laurent(M: Matrix) -> Matrix:
    return M.map(as_poly)


def int_det(M: Matrix) -> int:
    """Exact integer determinant by Bareiss elimination."""
    if not M.is_square():
        raise MatrixError("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return 1
    a = [list(r) for r in M.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_laurent(M: Matrix) -> LaurentPoly:
    """Determinant over Q[t, t^-1] by fraction-free Bareiss elimination."""
    if not M.is_square():
        raise MatrixError("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return ONE
    a = [[as_poly(x) for x in r] for r in M.rows]
    sign, prev = 1, ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


@dataclass(frozen=True)
class SmithForm:
    """U @ M @ V == diag(D) with U, V unimodular over Q[t, t^-1].

    ``U_inv`` and ``V_inv`` are carried along so callers never need to invert.
    """

    U: Matrix
    V: Matrix
    D: Tuple[LaurentPoly, ...]
    U_inv: Matrix
    V_inv: Matrix

    def diagonal_matrix(self, shape: Tuple[int, int]) -> Matrix:
        m, n = shape
        return Matrix(
            tuple(self.D[i] if i == j and i < len(self.D) else ZERO for j in range(n)) for i in range(m)
        ) if m else Matrix((), ncols=n)


def smith_normal_form(M: Matrix) -> SmithForm:
    """Smith normal form over the Euclidean domain Q[t, t^-1] (valuation = span)."""
    m, n = M.shape
    A = [[as_poly(x) for x in r] for r in M.rows]
    U = [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
    Ui = [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
    V = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    Vi = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

    # Row op  R_i += c R_k  acts on A, U; inverse op on columns of U_inv.
    def row_add(i, k, c):
        A[i] = [a + c * b for a, b in zip(A[i], A[k])]
        U[i] = [a + c * b for a, b in zip(U[i], U[k])]
        for r in Ui:
            r[k] = r[k] - c * r[i]

    def row_swap(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        for r in Ui:
            r[i], r[k] = r[k], r[i]

    def row_scale(i, c):
        # c must be a unit
        cinv = c ** -1
        A[i] = [a * c for a in A[i]]
        U[i] = [a * c for a in U[i]]
        for r in Ui:
            r[i] = r[i] * cinv

    def col_add(j, k, c):
        # C_j += c C_k
        for r in A:
            r[j] = r[j] + c * r[k]
        for r in V:
            r[j] = r[j] + c * r[k]
        Vi[k] = [a - c * b for a, b in zip(Vi[k], Vi[j])]

    def col_swap(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    D: List[LaurentPoly] = []
    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if A[i][j] and (best is None or A[i][j].span < best[0]):
                        best = (A[i][j].span, i, j)
            if best is None:
                break
            _, i, j = best
            if i != k:
                row_swap(i, k)
            if j != k:
                col_swap(j, k)
            p = A[k][k]
            dirty = False
            for i in range(k + 1, m):
                if A[i][k]:
                    q, r = divmod_laurent(A[i][k], p)
                    row_add(i, k, -q)
                    dirty = dirty or bool(r)
            for j in range(k + 1, n):
                if A[k][j]:
                    q, r = divmod_laurent(A[k][j], p)
                    col_add(j, k, -q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if A[i][j] and divmod_laurent(A[i][j], p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(k, bad, ONE)
        if A[k][k].is_zero():
            D.extend(ZERO for _ in range(k, min(m, n)))
            break
        norm = primitive_associate(A[k][k])
        unit = exact_div(norm, A[k][k])
        row_scale(k, unit)
        D.append(A[k][k])

    return SmithForm(Matrix(U, ncols=m), Matrix(V, ncols=n), tuple(D), Matrix(Ui, ncols=m), Matrix(Vi, ncols=n))


def invert_over_fractions(M: Matrix) -> Matrix:
    """Inverse over Q(t) by Gauss-Jordan elimination; entries are RationalFn."""
    if not M.is_square():
        raise MatrixError("inverse of a non-square matrix")
    n = M.nrows
    a = [[RationalFn.coerce(as_poly(x)) for x in r] + [RationalFn(ONE if i == j else ZERO) for j in range(n)]
         for i, r in enumerate(M.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular over Q(t)")
        a[k], a[piv] = a[piv], a[k]
        inv = RationalFn(ONE) / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                c = a[i][k]
                a[i] = [x - c * y for x, y in zip(a[i], a[k])]
    return Matrix((r[n:] for r in a), ncols=n)


def hermitian_matrix(A: Matrix, r) -> np.ndarray:
    """(1 - w) A + (1 - conj w) A^T at w = exp(2 pi i r)."""
    w = cmath.exp(2j * math.pi * float(r))
    a = np.array(A.tolist(), dtype=float).reshape(A.nrows, A.ncols)
    return (1 - w) * a + (1 - w.conjugate()) * a.T


EIGEN_TOL = 1e-7


def _charpoly_signature(A: Matrix, r, dps: int = 50) -> int:
    """n+ - n- from Descartes' rule on the characteristic polynomial.

    The polynomial of a Hermitian matrix is real-rooted, so sign changes count
    positive roots exactly; it is built by Faddeev-LeVerrier at ``dps`` digits.
    """
    import mpmath

    n = A.nrows
    with mpmath.workdps(dps):
        rq = Fraction(r) if not isinstance(r, float) else Fraction(r)
        w = mpmath.expjpi(2 * mpmath.mpf(rq.numerator) / rq.denominator)
        H = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                H[i, j] = (1 - w) * int(A[i, j]) + (1 - mpmath.conj(w)) * int(A[j, i])
        coeffs = [mpmath.mpf(1)]  # x^n + c1 x^(n-1) + ... + cn
        M = mpmath.zeros(n, n)
        I = mpmath.eye(n)
        for k in range(1, n + 1):
            M = H * M + coeffs[-1] * I
            c = -mpmath.re(sum(((H * M)[i, i] for i in range(n)), mpmath.mpc(0))) / k
            coeffs.append(c)
        size = max(abs(c) for c in coeffs)
        cut = size * mpmath.mpf(10) ** (-(dps * 3) // 5)
        if abs(coeffs[-1]) <= cut:
            raise SignatureError(f"singular Hermitian form at r = {r}")

        def changes(cs):
            signs = [1 if c > 0 else -1 for c in cs if abs(c) > cut]
            return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

        pos = changes(coeffs)
        neg = changes([c * (-1) ** k for k, c in enumerate(coeffs)])
        return pos - neg


def hermitian_signature(A: Matrix, r) -> int:
    """Signature n+ - n- of (1 - w) A + (1 - conj w) A^T, w = exp(2 pi i r).

    Eigenvalue counting and a characteristic-polynomial sign count must agree.
    Raises :class:`SignatureError` when w is a root of det(tA - A^T), any
    eigenvalue falls below ``EIGEN_TOL`` in magnitude, or the two counts differ.
    """
    r = Fraction(r) if not isinstance(r, float) else r
    if not 0 < r < 1:
        raise ValueError("signature parameter must lie in (0, 1)")
    if A.nrows == 0:
        return 0
    t = LaurentPoly.t()
    delta = det_laurent(Matrix((t * a - b for a, b in zip(ra, rb)) for ra, rb in zip(A.rows, A.T.rows)))
    scale = sum(abs(float(v)) for _, v in delta.items())
    if abs(eval_unit(delta, r)) < 1e-9 * scale:
        raise SignatureError(f"exp(2 pi i * {r}) is a root of the Alexander polynomial")
    eig = np.linalg.eigvalsh(hermitian_matrix(A, r))
    if np.min(np.abs(eig)) < EIGEN_TOL:
        raise SignatureError(f"near-degenerate Hermitian form at r = {r}")
    by_eig = int(np.sum(eig > 0) - np.sum(eig < 0))
    by_poly = _charpoly_signature(A, r)
    if by_eig != by_poly:
        raise SignatureError(f"eigenvalue count {by_eig} and sign count {by_poly} disagree at r = {r}")
    return by_eig
