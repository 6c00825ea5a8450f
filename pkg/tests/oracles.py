"""Independent reference computations used to derive the frozen test values.

Nothing here imports concordance_lab: every route goes through sympy, mpmath
or a separate string-based word engine, so agreement is meaningful.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath
import sympy

t = sympy.Symbol("t")


# -- polynomial / module side --------------------------------------------------

def sym_matrix(rows):
    return sympy.Matrix(rows)


def alexander(rows):
    """det(tA - A^T), normalized to lowest degree 0 and positive constant term."""
    A = sym_matrix(rows)
    if A.shape[0] == 0:
        return sympy.Integer(1)
    p = sympy.Poly(sympy.expand((t * A - A.T).det()), t)
    return normalize(p.as_expr())


def normalize(expr):
    p = sympy.Poly(sympy.expand(expr), t)
    # strip t^k factors
    while p.eval(0) == 0:
        p = sympy.Poly(sympy.cancel(p.as_expr() / t), t)
    if p.eval(0) < 0:
        p = -p
    return p.as_expr()


def determinantal_orders(R):
    """Invariant factors of a square polynomial matrix via gcds of k-minors,
    with powers of t (units of the Laurent ring) stripped."""
    R = sympy.Matrix(R)
    n = R.shape[0]
    d = [sympy.Integer(1)]
    for k in range(1, n + 1):
        g = sympy.Integer(0)
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                g = sympy.gcd(g, sympy.expand(R.extract(list(rows), list(cols)).det()))
        d.append(g)
    out = []
    for k in range(1, n + 1):
        q = sympy.cancel(d[k] / d[k - 1])
        q = normalize(q)
        out.append(sympy.Poly(q, t).monic().as_expr() if sympy.Poly(q, t).degree() > 0 else sympy.Integer(1))
    return out


def blanchfield_matrix(rows):
    A = sym_matrix(rows)
    return ((1 - t) * (t * A - A.T).inv()).applyfunc(sympy.cancel)


def in_laurent_ring(expr) -> bool:
    """True iff a rational function lies in Q[t, t^-1]: denominator a monomial."""
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    den = sympy.Poly(den, t)
    return len(den.terms()) == 1


def conj(expr):
    return expr.subs(t, 1 / t)


def pairing(rows, u, v):
    B = blanchfield_matrix(rows)
    n = B.shape[0]
    return sympy.cancel(sum(conj(sympy.sympify(u[i])) * B[i, j] * sympy.sympify(v[j]) for i in range(n) for j in range(n)))


# -- signatures ------------------------------------------------------------------

def signature(rows, r, dps: int = 40) -> int:
    """Levine-Tristram signature by high-precision eigenvalues."""
    with mpmath.workdps(dps):
        w = mpmath.exp(2j * mpmath.pi * mpmath.mpf(Fraction(r).numerator) / Fraction(r).denominator)
        n = len(rows)
        H = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                H[i, j] = (1 - w) * rows[i][j] + (1 - mpmath.conj(w)) * rows[j][i]
        ev = mpmath.eighe(H, eigvals_only=True)
        pos = sum(1 for e in ev if e > mpmath.mpf(10) ** (-dps // 2))
        neg = sum(1 for e in ev if e < -mpmath.mpf(10) ** (-dps // 2))
        return pos - neg


def arf_majority(rows) -> int:
    """Arf invariant of q(x) = x^T A x mod 2 as its majority value on GF(2)^n."""
    n = len(rows)
    ones = 0
    for x in itertools.product((0, 1), repeat=n):
        q = sum(x[i] * rows[i][j] * x[j] for i in range(n) for j in range(n)) % 2
        ones += q
    return 1 if 2 * ones > 2 ** n else 0


def rho_riemann(rows, n: int = 3000) -> float:
    """Midpoint-rule integral of the signature function on a uniform grid."""
    return sum(signature(rows, Fraction(2 * k + 1, 2 * n), dps=20) for k in range(n)) / n


# -- words: letters as strings 'a','b','c','d' and inverses 'A','B','C','D' --------

GEN = "abcd"


def s_reduce(w: str) -> str:
    st = []
    for ch in w:
        if st and st[-1] == ch.swapcase():
            st.pop()
        else:
            st.append(ch)
    return "".join(st)


def s_inv(w: str) -> str:
    return w[::-1].swapcase()


def s_comm(y: str, z: str) -> str:
    return s_reduce(s_inv(y) + s_inv(z) + y + z)


def s_conj(y: str, x: str) -> str:
    return s_reduce(s_inv(x) + y + x)


def s_family(a: int, c: int, n: int):
    b = 3 - a
    xa, xb, xc = GEN[a - 1], GEN[b - 1], GEN[c - 1]
    level = [(s_comm(xa, xb), s_comm(xa, xc))]
    for _ in range(n - 1):
        nxt = []
        for y, z in level:
            yy = s_comm(y, s_conj(y, xa))
            zz = s_comm(z, s_conj(z, xa))
            yz = s_comm(y, z)
            nxt += [(yy, zz), (yz, zz), (yy, yz)]
        level = nxt
    return level


def s_union_count(labels_depths):
    seen = set()
    for (a, c), n in labels_depths:
        seen.update(s_family(a, c, n))
    return 2 * len(seen)


T1, T2, T3, T4 = sympy.symbols("t1:5")
TS = (T1, T2, T3, T4)


def s_fox(w: str, i: int):
    """Abelianized Fox derivative by the recursive product rule on sympy symbols."""
    if not w:
        return sympy.Integer(0)
    if len(w) == 1:
        g = GEN.index(w.lower())
        if g != i - 1:
            return sympy.Integer(0)
        return sympy.Integer(1) if w.islower() else -1 / TS[g]
    head, tail = w[:1], w[1:]
    g = GEN.index(head.lower())
    ab = TS[g] if head.islower() else 1 / TS[g]
    return sympy.expand(s_fox(head, i) + ab * s_fox(tail, i))
