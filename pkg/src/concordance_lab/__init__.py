"""Exact algebraic obstructions to knots being slice or doubly slice."""

from .ring import LaurentPoly, RationalFn, MultiLaurent
from .matrixalg import Matrix, smith_normal_form
from .seifert import (
    SeifertForm,
    SignatureFunction,
    alexander_polynomial,
    arf_invariant,
    find_hyperbolic_basis,
    find_metabolizer,
    signature_function,
)
from .alexmodule import blanchfield, crt_split, decompose, generates, pair, self_annihilating_submodules
from .words import GroupWord, FamilySpec, generate_family, family_union_count
from .infection import Infection, InfectionAxis, SeifertLeaf, SignatureLeaf, Sum, classify, rho_z, rho_z_knot

__version__ = "0.1.0"
