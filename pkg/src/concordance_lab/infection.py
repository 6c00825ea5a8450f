"""Infection (satellite) descriptors, abelian rho integrals and the classification pipeline."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .alexmodule import (
    AlexanderModule,
    BlanchfieldForm,
    Submodule,
    UnsupportedModuleShape,
    blanchfield,
    crt_split,
    decompose,
    pair,
    self_annihilating_submodules,
)
from .ring import LaurentPoly, as_poly
from .seifert import (
    IndeterminateError,
    SeifertForm,
    SignatureFunction,
    alexander_polynomial,
    arf_invariant,
    connected_sum,
    find_hyperbolic_basis,
    find_metabolizer,
    fox_milnor,
    fox_milnor_factor,
    inverse,
    signature_function,
)
from .words import CommPair, certify_depth


class DescriptorError(ValueError):
    pass


class NestedInfectionError(DescriptorError):
    pass


# -- descriptors ----------------------------------------------------------------

@dataclass(frozen=True)
class SeifertLeaf:
    form: SeifertForm
    name: str = ""


@dataclass(frozen=True)
class SignatureLeaf:
    """A companion known only through its signature function (and optionally Arf)."""

    signature: SignatureFunction
    arf: Optional[int] = None
    name: str = ""


@dataclass(frozen=True)
class Sum:
    parts: Tuple["KnotDescriptor", ...]


@dataclass(frozen=True)
class InfectionAxis:
    module_class: Tuple[LaurentPoly, ...]  # presentation coordinates in the seed module
    derived_depth: int = 1
    disjoint_from_surface: bool = True
    label: str = ""
    certificate: Optional[CommPair] = None

    def __post_init__(self):
        object.__setattr__(self, "module_class", tuple(as_poly(c) for c in self.module_class))
        if self.derived_depth < 1:
            raise DescriptorError(f"axis {self.label or '?'}: derived depth must be >= 1")
        if self.certificate is not None:
            if not certify_depth(self.certificate) or self.certificate.depth < self.derived_depth:
                raise DescriptorError(f"axis {self.label or '?'}: certificate does not show depth {self.derived_depth}")


@dataclass(frozen=True)
class Infection:
    seed: "KnotDescriptor"
    infections: Tuple[Tuple[InfectionAxis, "KnotDescriptor"], ...]


KnotDescriptor = Union[SeifertLeaf, SignatureLeaf, Sum, Infection]


def leaf(rows, name: str = "") -> SeifertLeaf:
    return SeifertLeaf(SeifertForm.from_rows(rows), name)


def descriptor_inverse(d: KnotDescriptor) -> KnotDescriptor:
    """Concordance inverse (mirror image, reversed) of a leaf or sum."""
    if isinstance(d, SeifertLeaf):
        return SeifertLeaf(inverse(d.form), f"-{d.name}" if d.name else "")
    if isinstance(d, SignatureLeaf):
        return SignatureLeaf(-d.signature, d.arf, f"-{d.name}" if d.name else "")
    if isinstance(d, Sum):
        return Sum(tuple(descriptor_inverse(p) for p in d.parts))
    raise NestedInfectionError("inverse of an infected knot is not supported")


def effective_seifert(d: KnotDescriptor) -> SeifertForm:
    """Seifert form of the knot described by ``d``.

    Infection along axes in the commutator subgroup that miss the surface
    leaves the form unchanged, so companions contribute nothing.
    """
    if isinstance(d, SeifertLeaf):
        return d.form
    if isinstance(d, SignatureLeaf):
        raise DescriptorError("a signature-only companion has no recorded Seifert form")
    if isinstance(d, Sum):
        S = SeifertForm.unknot()
        for p in d.parts:
            S = connected_sum(S, effective_seifert(p))
        return S
    if isinstance(d, Infection):
        for axis, _ in d.infections:
            if not axis.disjoint_from_surface:
                raise DescriptorError(f"axis {axis.label or '?'} meets the Seifert surface")
            if axis.derived_depth < 1:
                raise DescriptorError(f"axis {axis.label or '?'} is not in the commutator subgroup")
        return effective_seifert(d.seed)
    raise TypeError(f"not a knot descriptor: {d!r}")


def knot_signature(d: KnotDescriptor) -> SignatureFunction:
    if isinstance(d, SeifertLeaf):
        return signature_function(d.form)
    if isinstance(d, SignatureLeaf):
        return d.signature
    if isinstance(d, Sum):
        acc = SignatureFunction.zero()
        for p in d.parts:
            acc = acc + knot_signature(p)
        return acc
    raise NestedInfectionError("signature of an infected knot is out of scope")


# -- rho ----------------------------------------------------------------------

RHO_MAX_WIDTH = 1e-6


@dataclass(frozen=True)
class RhoValue:
    """Either an exact rational (lo == hi) or an enclosing interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def exact_value(cls, v) -> "RhoValue":
        v = Fraction(v)
        return cls(v, v)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def exact(self) -> Optional[Fraction]:
        return self.lo if self.is_exact else None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def certainly_nonzero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def certainly_zero(self) -> bool:
        return self.is_exact and self.lo == 0

    def exceeds(self, c) -> bool:
        return self.lo > Fraction(c)

    def __add__(self, other: "RhoValue") -> "RhoValue":
        return RhoValue(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "RhoValue":
        return RhoValue(-self.hi, -self.lo)

    def __str__(self):
        if self.is_exact:
            return str(self.lo)
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


ZERO_RHO = RhoValue.exact_value(0)


def rho_z(sig: SignatureFunction) -> RhoValue:
    """Integral of the signature function over r in [0, 1].

    Writing b_k for the jump locations and v_k for the arc values, the integral
    is v_n + sum b_k (v_{k-1} - v_k); uncertain b_k widen the result linearly.
    """
    vals = sig.arc_values
    lo = hi = Fraction(vals[-1])
    for k, (bp, _) in enumerate(sig.jumps, start=1):
        c = vals[k - 1] - vals[k]
        if not c:
            continue
        a, b = c * Fraction(bp.lo), c * Fraction(bp.hi)
        lo += min(a, b)
        hi += max(a, b)
    out = RhoValue(lo, hi)
    if out.width >= RHO_MAX_WIDTH:
        raise ArithmeticError(f"rho enclosure too wide: {out}")
    return out


def rho_z_knot(d: KnotDescriptor) -> RhoValue:
    if isinstance(d, Sum):
        acc = ZERO_RHO
        for p in d.parts:
            acc = acc + rho_z_knot(p)
        return acc
    if isinstance(d, Infection):
        raise NestedInfectionError("abelian rho of an infected knot is out of scope")
    return rho_z(knot_signature(d))


def gilmer_livingston_check(curve_sigs: Sequence[SignatureFunction]) -> bool:
    """True iff every doubled signature function vanishes at r = 1/3 and 2/3.

    Raises IndeterminateError when 1/3 or 2/3 sits on a jump.
    """
    for s in curve_sigs:
        doubled = s + s
        for r in (Fraction(1, 3), Fraction(2, 3)):
            if doubled.value_at(r) != 0:
                return False
    return True


# -- double solvability obstruction ---------------------------------------------

class Verdict(str, enum.Enum):
    OBSTRUCTED = "obstructed"
    UNOBSTRUCTED = "unobstructed"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SideAnalysis:
    """What the rho argument says about one solution with a given kernel."""

    kernel: str
    live_axes: Tuple[str, ...]  # axes surviving in the solution's coefficient system
    pairing_witnesses: Tuple[str, ...]  # "p -> eta: value" with Bl(p, eta) != 0
    rho: RhoValue

    @property
    def witness(self) -> bool:
        return self.rho.certainly_nonzero()

    @property
    def clear(self) -> bool:
        return self.rho.certainly_zero()


@dataclass(frozen=True)
class Assignment:
    first: SideAnalysis
    second: SideAnalysis

    @property
    def ruled_out(self) -> bool:
        return self.first.witness or self.second.witness


@dataclass
class DoubleSolvabilityAnalysis:
    double_one_five: Verdict
    one_one_five: Verdict
    assignments: List[Assignment] = field(default_factory=list)
    selfann: Optional[List[Submodule]] = None
    notes: List[str] = field(default_factory=list)


def _combine(rulings: List[Tuple[bool, bool]]) -> Verdict:
    """rulings: (ruled out, certainly escapes) per assignment."""
    if not rulings:
        return Verdict.INCONCLUSIVE
    if all(r for r, _ in rulings):
        return Verdict.OBSTRUCTED
    if any(e for _, e in rulings):
        return Verdict.UNOBSTRUCTED
    return Verdict.INCONCLUSIVE


def _in_pieces(coords, pieces: Sequence[int]) -> bool:
    return all(c.is_zero() for i, c in enumerate(coords) if i not in pieces)


def analyze_double_solutions(d: KnotDescriptor) -> DoubleSolvabilityAnalysis:
    """Rule out double (1.5)- and (1, 1.5)-solutions via companion rho integrals.

    A double solution (W1, W2) has kernels X1, X2 that are complementary
    self-annihilating submodules.  In Wj an axis eta survives exactly when
    Bl(p, eta) != 0 for some p in Xj; the rho invariant over Wj then equals the
    sum of rho_Z over the surviving companions, which must vanish if Wj is a
    (1.5)-solution.  The seed's own contribution is taken to be zero.
    """
    inconclusive = lambda note: DoubleSolvabilityAnalysis(Verdict.INCONCLUSIVE, Verdict.INCONCLUSIVE, notes=[note])
    if not isinstance(d, Infection):
        return inconclusive("no infection axes: only companion contributions are evaluated")
    try:
        S = effective_seifert(d)
    except DescriptorError as e:
        return inconclusive(str(e))
    try:
        M = crt_split(decompose(S))
        B = blanchfield(S)
        subs = self_annihilating_submodules(M, B)
    except UnsupportedModuleShape as e:
        return inconclusive(f"unsupported module shape: {e}")

    notes = ["seed contribution to rho assumed zero (seed bounds the relevant solutions)"]
    live = []
    for axis, comp in d.infections:
        name = axis.label or str(axis.module_class)
        coords = M.coordinates(axis.module_class)
        if all(c.is_zero() for c in coords):
            notes.append(f"axis {name} is null-homologous in the module and never survives")
            continue
        if not any(_in_pieces(coords, X.pieces) for X in subs):
            return DoubleSolvabilityAnalysis(
                Verdict.INCONCLUSIVE, Verdict.INCONCLUSIVE, selfann=subs,
                notes=notes + [f"axis {name} lies in no self-annihilating submodule"],
            )
        try:
            rho = rho_z_knot(comp)
        except NestedInfectionError as e:
            return inconclusive(f"axis {name}: {e}")
        live.append((name, axis, coords, rho))

    n = M.rank
    unit = [tuple(as_poly(1) if i == j else as_poly(0) for j in range(n)) for i in range(n)]

    def side(X: Submodule) -> SideAnalysis:
        surviving, witnesses, rho = [], [], ZERO_RHO
        for name, axis, coords, r in live:
            hits = []
            for i in X.pieces:
                val = pair(B, M.to_presentation(unit[i]), axis.module_class)
                if not val.is_zero():
                    hits.append(f"{M.generator_names[i]} -> {name}: {val}")
            # dual route: for X = X^perp, eta survives iff it lies outside X
            if bool(hits) == _in_pieces(coords, X.pieces):
                raise AssertionError(f"pairing and containment disagree for axis {name} against {X}")
            if hits:
                surviving.append(name)
                witnesses.extend(hits)
                rho = rho + r
        return SideAnalysis(X.label, tuple(surviving), tuple(witnesses), rho)

    assignments = []
    for X1, X2 in itertools.permutations(subs, 2):
        if set(X1.pieces) & set(X2.pieces) or len(X1.pieces) + len(X2.pieces) != n:
            continue
        assignments.append(Assignment(side(X1), side(X2)))
    if not assignments:
        return DoubleSolvabilityAnalysis(
            Verdict.INCONCLUSIVE, Verdict.INCONCLUSIVE, selfann=subs,
            notes=notes + ["no complementary pair of self-annihilating submodules"],
        )
    double = _combine([(a.ruled_out, a.first.clear and a.second.clear) for a in assignments])
    one = _combine([(a.second.witness, a.second.clear) for a in assignments])
    for a in assignments:
        for k, s in (("W1", a.first), ("W2", a.second)):
            if s.witness:
                notes.append(f"kernels ({a.first.kernel}, {a.second.kernel}): {k} has rho {s.rho} != 0 via {'; '.join(s.pairing_witnesses)}")
    return DoubleSolvabilityAnalysis(double, one, assignments, subs, notes)


def double_one_five_obstruction(d: KnotDescriptor) -> Verdict:
    return analyze_double_solutions(d).double_one_five


# -- classification report ------------------------------------------------------

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass
class ObstructionReport:
    arf: Optional[int] = None
    doubly_0_solvable: Optional[bool] = None
    alexander_polynomial: Optional[str] = None
    fox_milnor: Optional[bool] = None
    fox_milnor_factor: Optional[str] = None
    alg_slice: str = UNKNOWN
    metabolizer: Optional[List[List[int]]] = None
    alg_doubly_slice: str = UNKNOWN
    hyperbolic_witness: Optional[List[List[int]]] = None
    module_orders: Optional[List[str]] = None
    blanchfield_selfann_count: Optional[int] = None
    blanchfield_hyperbolic: str = UNKNOWN
    gilmer_livingston: str = "inapplicable"
    double_one_five: str = Verdict.INCONCLUSIVE.value
    one_one_five: str = Verdict.INCONCLUSIVE.value
    assignments: List[Dict] = field(default_factory=list)
    companion_rho: List[Dict] = field(default_factory=list)
    cm: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    def check_consistency(self):
        if self.alg_doubly_slice == YES:
            assert self.alg_slice == YES and self.hyperbolic_witness is not None
        if self.double_one_five == Verdict.OBSTRUCTED.value:
            assert any("!= 0" in n for n in self.notes)


def _companions(d: KnotDescriptor) -> List[Tuple[str, KnotDescriptor]]:
    if isinstance(d, Infection):
        return [(a.label or str(a.module_class), c) for a, c in d.infections] + _companions(d.seed)
    if isinstance(d, Sum):
        return [x for p in d.parts for x in _companions(p)]
    return []


def classify(d: KnotDescriptor, search_bound: int = 2, cm=None) -> ObstructionReport:
    """Run every available invariant and obstruction on ``d``."""
    rep = ObstructionReport()
    try:
        S = effective_seifert(d)
    except DescriptorError as e:
        rep.notes.append(f"no Seifert-level data: {e}")
        S = None

    if S is not None:
        rep.arf = arf_invariant(S)
        rep.doubly_0_solvable = rep.arf == 0
        rep.alexander_polynomial = str(alexander_polynomial(S))
        rep.fox_milnor = fox_milnor(S)
        f = fox_milnor_factor(S)
        rep.fox_milnor_factor = None if f is None else str(f)

        met = find_metabolizer(S, search_bound)
        hyp = find_hyperbolic_basis(S, search_bound)
        if hyp is not None and hyp.verify(S):
            rep.hyperbolic_witness = hyp.basis_change.tolist()
            rep.alg_doubly_slice = YES
            if met is None:
                met = hyp  # a hyperbolic basis is in particular a metabolizer
        if met is not None and met.verify(S):
            rep.alg_slice = YES
            rep.metabolizer = met.basis_change.tolist()
        else:
            sig = signature_function(S)
            if not rep.fox_milnor or not sig.is_zero() or rep.arf:
                rep.alg_slice = NO
            else:
                rep.notes.append(f"no metabolizer with entries <= {search_bound}")
        if rep.alg_slice == NO:
            rep.alg_doubly_slice = NO
        elif rep.alg_doubly_slice != YES:
            rep.notes.append(f"no hyperbolic basis with entries <= {search_bound}")

        try:
            M = crt_split(decompose(S))
            rep.module_orders = [str(o) for o in M.orders]
            subs = self_annihilating_submodules(M, blanchfield(S))
            rep.blanchfield_selfann_count = len(subs)
            n = M.rank
            comp = any(
                not set(a.pieces) & set(b.pieces) and len(a.pieces) + len(b.pieces) == n
                for a, b in itertools.combinations(subs, 2)
            ) or n == 0
            rep.blanchfield_hyperbolic = YES if comp else NO
            if not comp and rep.alg_doubly_slice == UNKNOWN:
                rep.alg_doubly_slice = NO
        except UnsupportedModuleShape as e:
            rep.notes.append(f"module shape unsupported for submodule enumeration: {e}")

    companions = _companions(d)
    if companions:
        sigs = []
        for name, c in companions:
            try:
                r = rho_z_knot(c)
                entry = {"axis": name, "rho": str(r), "exact": r.is_exact}
                if cm is not None:
                    entry["exceeds_cm"] = r.exceeds(cm)
                rep.companion_rho.append(entry)
                sigs.append(knot_signature(c))
            except NestedInfectionError as e:
                rep.notes.append(f"companion on {name}: {e}")
        try:
            rep.gilmer_livingston = "pass" if gilmer_livingston_check(sigs) else "fail"
        except IndeterminateError as e:
            rep.gilmer_livingston = "indeterminate"
            rep.notes.append(str(e))
    if cm is not None:
        rep.cm = str(Fraction(cm))

    an = analyze_double_solutions(d)
    rep.double_one_five = an.double_one_five.value
    rep.one_one_five = an.one_one_five.value
    rep.assignments = [
        {
            "kernels": [a.first.kernel, a.second.kernel],
            "rho": [str(a.first.rho), str(a.second.rho)],
            "live_axes": [list(a.first.live_axes), list(a.second.live_axes)],
            "ruled_out": a.ruled_out,
        }
        for a in an.assignments
    ]
    rep.notes.extend(an.notes)
    rep.check_consistency()
    return rep
