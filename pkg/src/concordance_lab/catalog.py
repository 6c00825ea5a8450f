"""Built-in knots, each checked against a table of expected invariants on first use."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .infection import (
    Infection,
    InfectionAxis,
    KnotDescriptor,
    SeifertLeaf,
    SignatureLeaf,
    effective_seifert,
    leaf,
    rho_z_knot,
)
from .ring import LaurentPoly
from .seifert import (
    SeifertForm,
    SignatureFunction,
    alexander_polynomial,
    arf_invariant,
    levine_tristram,
)


class CatalogSelfTestError(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    descriptor: KnotDescriptor
    note: str
    expected: Dict[str, object] = field(default_factory=dict)
    # named module classes, in presentation coordinates
    classes: Dict[str, Tuple[LaurentPoly, ...]] = field(default_factory=dict)


SEED_ROWS = [[-1, 0, 0, 0], [-1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
GL_ROWS = [[0, 1], [2, 0]]
TREFOIL_ROWS = [[-1, 1], [0, -1]]

# companion with signature 2 on (s, 1 - s), s = 2/5
STEP_S = Fraction(2, 5)
STEP_COMPANION = SignatureLeaf(
    SignatureFunction.from_steps([(0, 0), (STEP_S, 2), (1 - STEP_S, 0)]), arf=0, name="J"
)


def _seed_classes() -> Dict[str, Tuple[LaurentPoly, ...]]:
    S = leaf(SEED_ROWS).form
    # the surface curve y_i is column i of A in the dual basis
    y = {f"y{i + 1}": tuple(LaurentPoly.const(c) for c in S.A.col(i)) for i in range(4)}

    def add(u, v):
        return tuple(a + b for a, b in zip(u, v))

    x = {"x1": add(y["y1"], y["y4"]), "x2": y["y3"], "x3": add(y["y2"], y["y3"]), "x4": y["y1"]}
    return {**y, **x}


def _gl_classes():
    one, zero = LaurentPoly.const(1), LaurentPoly.const(0)
    return {"eta1": (one, zero), "eta2": (zero, one)}


def _build() -> Dict[str, CatalogEntry]:
    gl = leaf(GL_ROWS, "gl")
    eta = _gl_classes()
    e1 = InfectionAxis(eta["eta1"], label="eta1")
    e2 = InfectionAxis(eta["eta2"], label="eta2")
    entries = [
        CatalogEntry("unknot", SeifertLeaf(SeifertForm.unknot(), "unknot"), "empty Seifert form",
                     {"alexander": "1", "arf": 0, "sigma_half": 0}),
        CatalogEntry("trefoil_right", leaf(TREFOIL_ROWS, "trefoil_right"), "right-handed trefoil",
                     {"alexander": "1 - t + t^2", "arf": 1, "sigma_half": -2}),
        CatalogEntry("seed_k", leaf(SEED_ROWS, "seed_k"), "trefoil # inverse trefoil, genus 2 ribbon seed",
                     {"alexander": "1 - 2t + 3t^2 - 2t^3 + t^4", "arf": 0, "sigma_half": 0},
                     _seed_classes()),
        CatalogEntry("gl", gl, "genus 1, bands unknotted and untwisted",
                     {"alexander": "2 - 5t + 2t^2", "arf": 0, "sigma_half": 0}, eta),
        CatalogEntry("thm15", Infection(gl, ((e2, STEP_COMPANION),)),
                     "gl infected along eta2 by a step-signature companion, s = 2/5",
                     {"alexander": "2 - 5t + 2t^2", "arf": 0, "sigma_half": 0, "rho": [Fraction(2, 5)]}, eta),
        CatalogEntry("thm10", Infection(gl, ((e1, STEP_COMPANION), (e2, STEP_COMPANION))),
                     "gl infected along eta1 and eta2 by the same companion",
                     {"alexander": "2 - 5t + 2t^2", "arf": 0, "sigma_half": 0,
                      "rho": [Fraction(2, 5), Fraction(2, 5)]}, eta),
    ]
    return {e.name: e for e in entries}


def self_test(entry: CatalogEntry) -> None:
    S = effective_seifert(entry.descriptor)
    got = {
        "alexander": str(alexander_polynomial(S)),
        "arf": arf_invariant(S),
        "sigma_half": levine_tristram(S, Fraction(1, 2)) if S.size else 0,
    }
    if isinstance(entry.descriptor, Infection):
        got["rho"] = [rho_z_knot(c).exact for _, c in entry.descriptor.infections]
    for k, want in entry.expected.items():
        if got.get(k) != want:
            raise CatalogSelfTestError(f"catalog entry {entry.name}: {k} = {got.get(k)}, expected {want}")


@lru_cache(maxsize=None)
def load_catalog() -> Dict[str, CatalogEntry]:
    cat = _build()
    for e in cat.values():
        self_test(e)
    return cat


def get(name: str) -> CatalogEntry:
    cat = load_catalog()
    if name not in cat:
        raise KeyError(f"unknown catalog knot {name!r}; known: {', '.join(cat)}")
    return cat[name]
