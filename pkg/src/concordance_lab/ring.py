"""Exact Laurent polynomials, rational functions and abelianized group-ring elements.

Coefficients are :class:`fractions.Fraction` throughout.  A polynomial is
tagged ``"Z"`` when every coefficient is integral and ``"Q"`` otherwise; the
tag is derived, never stored, so arithmetic never has to reconcile it.
Floating point appears only in :func:`eval_unit`.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Coeff = Union[int, Fraction]


class LaurentPoly:
    """Element of Z[t, t^-1] or Q[t, t^-1], stored sparsely as ``{exponent: coeff}``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Coeff] | None = None):
        c: Dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Fraction(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def const(cls, c: Coeff) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: Coeff, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def from_list(cls, coeffs: Iterable[Coeff], low: int = 0) -> "LaurentPoly":
        """Coefficients listed from exponent ``low`` upwards."""
        return cls({low + i: v for i, v in enumerate(coeffs)})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")

    _TERM = re.compile(
        r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*?\s*t(?:\s*\^\s*\(?\s*(-?\d+)\s*\)?)?)?\s*"
    )

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse strings such as ``"2t^2 - 5t + 2"``, ``"t^-1 - 1 + t"`` or ``"1/2"``."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial string")
        pos = 0
        out: Dict[int, Fraction] = {}
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            sign, num, tpart, exp = m.groups()
            if sign is None and not first:
                raise ValueError(f"missing operator in {text!r} at offset {pos}")
            if num is None and tpart is None:
                raise ValueError(f"dangling sign in {text!r} at offset {pos}")
            c = Fraction(num) if num is not None else Fraction(1)
            if sign == "-":
                c = -c
            e = 0 if tpart is None else (int(exp) if exp is not None else 1)
            out[e] = out.get(e, Fraction(0)) + c
            pos = m.end()
            first = False
        return cls(out)

    # -- basic accessors ----------------------------------------------------

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    @property
    def ring(self) -> str:
        return "Z" if all(v.denominator == 1 for v in self._c.values()) else "Q"

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._c.items()))

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def low(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no lowest exponent")
        return min(self._c)

    @property
    def high(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no highest exponent")
        return max(self._c)

    @property
    def span(self) -> int:
        """Highest minus lowest exponent (the Euclidean valuation on Q[t, t^-1])."""
        return self.high - self.low

    @property
    def lead(self) -> Fraction:
        return self._c[self.high]

    @property
    def trailing(self) -> Fraction:
        return self._c[self.low]

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_unit(self, ring: str = "Q") -> bool:
        """Units are c*t^k (c != 0) over Q and +-t^k over Z."""
        if not self.is_monomial():
            return False
        return ring == "Q" or abs(self.lead) == 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: Dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have inverses in the Laurent ring")
            (e, v), = self._c.items()
            return LaurentPoly({e * n: Fraction(1) / v ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def conj(self) -> "LaurentPoly":
        """The involution t -> t^-1."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: e * v for e, v in self._c.items() if e})

    def __call__(self, x):
        """Evaluate at a number; exact for ints/Fractions, complex otherwise."""
        if isinstance(x, Rational):
            x = Fraction(x)
            return sum((v * x ** e for e, v in self._c.items()), Fraction(0))
        return sum((complex(v) * x ** e for e, v in self._c.items()), 0j)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                tt = "t" if e == 1 else f"t^{e}"
                body = tt if mag == 1 else f"{mag}{tt}" if mag.denominator == 1 else f"({mag}){tt}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def as_poly(p) -> LaurentPoly:
    return LaurentPoly.coerce(p)


ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
T = LaurentPoly.t()


# -- normalizations -----------------------------------------------------------

def normalize_units(p: LaurentPoly) -> LaurentPoly:
    """Multiply by +-t^k so the lowest exponent is 0 and the constant term is positive."""
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    q = p.shift(-p.low)
    return -q if q.coeff(0) < 0 else q


def normalize_monic(p: LaurentPoly) -> LaurentPoly:
    """Associate over Q[t, t^-1] with lowest exponent 0 and leading coefficient 1."""
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    q = p.shift(-p.low)
    return q * (Fraction(1) / q.lead)


def primitive_associate(p: LaurentPoly) -> LaurentPoly:
    """Associate over Q[t, t^-1] with coprime integer coefficients, lowest exponent 0
    and positive constant term.  Units normalize to 1."""
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    vals = list(p._c.values())
    den = math.lcm(*(v.denominator for v in vals))
    num = math.gcd(*(int(v * den) for v in vals))
    return normalize_units(p * Fraction(den, num))


def associated(p: LaurentPoly, q: LaurentPoly) -> bool:
    """Equality up to units of Q[t, t^-1]."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return normalize_monic(p) == normalize_monic(q)


def associated_z(p: LaurentPoly, q: LaurentPoly) -> bool:
    """Equality up to units +-t^k of Z[t, t^-1]."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return normalize_units(p) == normalize_units(q)


# -- Euclidean structure -----------------------------------------------------

def _poly_divmod(a: Dict[int, Fraction], b: Dict[int, Fraction]):
    """Ordinary division in Q[t] on exponent dicts (all exponents >= 0)."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    q: Dict[int, Fraction] = {}
    while r and max(r) >= db:
        dr = max(r)
        c = r[dr] / lb
        q[dr - db] = c
        for e, v in b.items():
            k = e + dr - db
            nv = r.get(k, 0) - c * v
            if nv:
                r[k] = nv
            else:
                r.pop(k, None)
    return q, r


def divmod_laurent(a: LaurentPoly, b: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """Return (q, r) with a = q*b + r and r == 0 or span(r) < span(b)."""
    a, b = as_poly(a), as_poly(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if a.is_zero():
        return ZERO, ZERO
    ja, jb = a.low, b.low
    a0 = a.shift(-ja)._c
    b0 = b.shift(-jb)._c
    q0, r0 = _poly_divmod(a0, b0)
    return LaurentPoly(q0).shift(ja - jb), LaurentPoly(r0).shift(ja)


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    q, r = divmod_laurent(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    if b.is_zero():
        return a.is_zero()
    return divmod_laurent(a, b)[1].is_zero()


def gcd_laurent(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic normalized gcd in Q[t, t^-1]."""
    a, b = as_poly(a), as_poly(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while b:
        a, b = b, divmod_laurent(a, b)[1]
    return normalize_monic(a)


def xgcd_laurent(a: LaurentPoly, b: LaurentPoly):
    """Return (g, s, u) with s*a + u*b = g, g the monic normalized gcd."""
    a, b = as_poly(a), as_poly(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1, s0, s1, u0, u1 = a, b, ONE, ZERO, ZERO, ONE
    while r1:
        q, r = divmod_laurent(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    g = normalize_monic(r0)
    k = exact_div(g, r0)  # a unit
    return g, s0 * k, u0 * k


def squarefree_part(p: LaurentPoly) -> LaurentPoly:
    q = normalize_units(p)
    if q.span == 0:
        return ONE
    g = gcd_laurent(q, q.derivative())
    return primitive_associate(exact_div(q, g))


def poly_mod(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Canonical representative of p in Q[t, t^-1]/(q): exponents in [0, span(q))."""
    p, q = as_poly(p), as_poly(q)
    if q.is_zero():
        raise ZeroDivisionError("reduction modulo zero")
    q0 = q.shift(-q.low)
    if q0.span == 0 or p.is_zero():
        return ZERO
    n = max(0, -p.low)
    r = LaurentPoly(_poly_divmod(p.shift(n)._c, q0._c)[1])
    if n and r:
        # q0 = c0 + t*h with c0 != 0, so t^-1 = -h/c0 modulo q0
        c0 = q0.coeff(0)
        t_inv = (q0 - c0).shift(-1) * (-1 / c0)
        for _ in range(n):
            r = LaurentPoly(_poly_divmod((r * t_inv)._c, q0._c)[1])
    return r


def irreducible_factors(p: LaurentPoly):
    """Factor over Q into primitive integer irreducibles: list of (factor, multiplicity).

    Delegates to sympy; the unit part is discarded.
    """
    import sympy

    q = primitive_associate(p)
    if q.span == 0:
        return []
    x = sympy.Symbol("x")
    expr = sum((sympy.Rational(v.numerator, v.denominator) * x ** e for e, v in q.items()), sympy.Integer(0))
    _, facs = sympy.factor_list(sympy.Poly(expr, x, domain="ZZ"))
    out = []
    for f, mult in facs:
        coeffs = [int(c) for c in reversed(f.all_coeffs())]
        out.append((primitive_associate(LaurentPoly.from_list(coeffs)), mult))
    out.sort(key=lambda fm: (fm[0].span, str(fm[0])))
    return out


def eval_unit(p: LaurentPoly, r) -> complex:
    """Evaluate p at exp(2*pi*i*r)."""
    p = as_poly(p)
    theta = 2 * math.pi * float(r)
    return sum((float(v) * cmath.exp(1j * e * theta) for e, v in p.items()), 0j)


# -- rational functions ------------------------------------------------------

class RationalFn:
    """Reduced fraction num/den in Q(t); den is monic with lowest exponent 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num, den = as_poly(num), as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        g = gcd_laurent(num, den)
        if g != ONE:
            num, den = exact_div(num, g), exact_div(den, g)
        k = den.low
        lead = den.lead
        self.num = num.shift(-k) * (Fraction(1) / lead)
        self.den = den.shift(-k) * (Fraction(1) / lead)

    @classmethod
    def coerce(cls, x) -> "RationalFn":
        return x if isinstance(x, RationalFn) else cls(as_poly(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __add__(self, other):
        o = RationalFn.coerce(other)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFn.coerce(other))

    def __rsub__(self, other):
        return RationalFn.coerce(other) - self

    def __mul__(self, other):
        o = RationalFn.coerce(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFn.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFn.coerce(other) / self

    def conj(self) -> "RationalFn":
        return RationalFn(self.num.conj(), self.den.conj())

    def eval_unit(self, r) -> complex:
        return eval_unit(self.num, r) / eval_unit(self.den, r)

    def __eq__(self, other):
        try:
            o = RationalFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def reduce_mod_lambda(f) -> RationalFn:
    """Canonical coset representative of f in Q(t)/Q[t, t^-1].

    The representative is p/q with q the reduced denominator and p carrying
    exponents in [0, span(q)); it is zero exactly when f is a Laurent polynomial.
    """
    f = RationalFn.coerce(f)
    if f.den.span == 0:
        return RationalFn(ZERO)
    return RationalFn(poly_mod(f.num, f.den), f.den)


# -- multivariate group ring Z[Z^4] ------------------------------------------

class MultiLaurent:
    """Integer Laurent polynomial in t1..t4 keyed by exponent 4-tuples."""

    __slots__ = ("_c",)
    NVARS = 4

    def __init__(self, coeffs: Mapping[Tuple[int, ...], int] | None = None):
        self._c = {tuple(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, exps: Tuple[int, ...], c: int = 1) -> "MultiLaurent":
        return cls({tuple(exps): c})

    @classmethod
    def variable(cls, i: int) -> "MultiLaurent":
        """t_i for i in 1..4."""
        e = [0] * cls.NVARS
        e[i - 1] = 1
        return cls.monomial(tuple(e))

    @classmethod
    def one(cls) -> "MultiLaurent":
        return cls.monomial((0,) * cls.NVARS)

    @property
    def coeffs(self) -> Dict[Tuple[int, ...], int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiLaurent.one() * other
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return MultiLaurent(c)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiLaurent.one() * other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiLaurent({k: v * other for k, v in self._c.items()})
        c: Dict[Tuple[int, ...], int] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c[k] = c.get(k, 0) + v1 * v2
        return MultiLaurent(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiLaurent.one() * other
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        if not self._c:
            return "MultiLaurent(0)"
        terms = []
        for k, v in sorted(self._c.items()):
            mono = "*".join(f"t{i + 1}^{e}" for i, e in enumerate(k) if e) or "1"
            terms.append(f"{v}*{mono}")
        return "MultiLaurent(" + " + ".join(terms) + ")"
