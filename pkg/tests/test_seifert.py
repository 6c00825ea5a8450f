import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import GL_ROWS, SEED_ROWS, SEED, TREFOIL_ROWS, random_seifert_rows, seifert_forms, stabilize
from concordance_lab.matrixalg import Matrix, SignatureError
from concordance_lab.ring import LaurentPoly, associated
from concordance_lab.seifert import (
    IndeterminateError,
    LagrangianWitness,
    SeifertForm,
    SeifertFormError,
    SignatureFunction,
    alexander_polynomial,
    arf_invariant,
    connected_sum,
    find_congruence,
    find_hyperbolic_basis,
    find_metabolizer,
    fox_milnor,
    fox_milnor_factor,
    inverse,
    levine_tristram,
    signature_function,
)

P = LaurentPoly.parse
SEED_K = SeifertForm.from_rows(SEED_ROWS)
GL = SeifertForm.from_rows(GL_ROWS)
TREFOIL = SeifertForm.from_rows(TREFOIL_ROWS)
UNKNOT = SeifertForm.unknot()
# twist knot 5_2; its Alexander polynomial has non-cyclotomic unit-circle roots
FIVE_TWO = SeifertForm.from_rows([[-1, 1], [0, -2]])


class TestSeifertForm:
    def test_odd_dimension(self):
        with pytest.raises(SeifertFormError, match="odd dimension"):
            SeifertForm.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]])

    def test_degenerate_antisymmetrization(self):
        with pytest.raises(SeifertFormError, match="unimodular"):
            SeifertForm.from_rows([[0, 0], [0, 0]])

    def test_genus(self):
        assert SEED_K.genus == 2 and UNKNOT.genus == 0


class TestAlexander:
    def test_seed(self):
        c = P("1 - t + t^2")
        assert alexander_polynomial(SEED_K) == c * c

    def test_unknot(self):
        assert alexander_polynomial(UNKNOT) == P("1")

    def test_gl(self):
        assert alexander_polynomial(GL) == P("2 - 5t + 2t^2")

    def test_gl_squared(self):
        d = alexander_polynomial(connected_sum(GL, GL))
        assert associated(d, P("2 - 5t + 2t^2") ** 2)

    @settings(max_examples=40)
    @given(seifert_forms(), seifert_forms(max_genus=1))
    def test_multiplicative_and_normalized_at_one(self, S1, S2):
        d = alexander_polynomial(connected_sum(S1, S2))
        assert associated(d, alexander_polynomial(S1) * alexander_polynomial(S2))
        assert abs(d(1)) == 1


class TestArf:
    def test_gl(self):
        assert alexander_polynomial(GL)(-1) == 9
        assert arf_invariant(GL) == 0

    def test_unknot(self):
        assert arf_invariant(UNKNOT) == 0

    def test_trefoil(self):
        assert abs(alexander_polynomial(TREFOIL)(-1)) == 3
        assert arf_invariant(TREFOIL) == 1

    @settings(max_examples=40)
    @given(seifert_forms(max_genus=1), seifert_forms(max_genus=1))
    def test_additive_mod_two(self, S1, S2):
        assert arf_invariant(connected_sum(S1, S2)) == arf_invariant(S1) ^ arf_invariant(S2)


class TestSumAndInverse:
    def test_unknot_is_identity(self):
        assert connected_sum(UNKNOT, GL) == GL

    def test_inverse_involution(self):
        assert inverse(inverse(SEED_K)) == SEED_K
        assert inverse(UNKNOT) == UNKNOT

    def test_inverse_trefoil_signature(self):
        assert levine_tristram(inverse(TREFOIL), Fraction(1, 2)) == 2

    def test_trefoil_sum_inverse_congruent_to_seed(self):
        P_ = find_congruence(connected_sum(TREFOIL, inverse(TREFOIL)), SEED_K, 2)
        assert P_ is not None
        A = connected_sum(TREFOIL, inverse(TREFOIL)).A
        assert P_.T @ A @ P_ == SEED_K.A


class TestSignatureFunction:
    def test_trefoil(self):
        sig = signature_function(TREFOIL)
        assert sig == SignatureFunction.from_steps([(0, 0), (Fraction(1, 6), -2), (Fraction(5, 6), 0)])
        assert sig.value_at(Fraction(1, 2)) == -2 and sig.value_at(Fraction(1, 10)) == 0

    def test_unknot(self):
        assert signature_function(UNKNOT).is_zero()

    def test_seed_constant_zero(self):
        sig = signature_function(SEED_K)
        assert sig.is_zero()
        assert [bp.lo for bp in sig.breakpoints] == [Fraction(1, 6), Fraction(5, 6)]

    def test_inexact_roots(self):
        sig = signature_function(FIVE_TWO)
        assert not sig.is_exact and sig.is_symmetric()
        assert sig.arc_values == (0, -2, 0)
        lo = sig.breakpoints[0]
        assert float(lo.hi) - float(lo.lo) < 1e-12

    def test_value_on_jump_is_indeterminate(self):
        with pytest.raises(IndeterminateError):
            signature_function(TREFOIL).value_at(Fraction(1, 6))

    @settings(max_examples=25)
    @given(seifert_forms())
    def test_symmetric_and_negated_by_inverse(self, S):
        sig = signature_function(S)
        assert sig.is_symmetric()
        neg = signature_function(inverse(S))
        for m in sig.arc_midpoints():
            assert neg.value_at(m) == -sig.value_at(m)

    @settings(max_examples=25)
    @given(seifert_forms())
    def test_matches_direct_signature_off_jumps(self, S):
        sig = signature_function(S)
        for k in range(1, 20):
            r = Fraction(k, 20)
            try:
                direct = levine_tristram(S, r)
            except SignatureError:
                continue
            assert sig.value_at(r) == direct


class TestFoxMilnor:
    def test_seed(self):
        assert fox_milnor(SEED_K)
        assert fox_milnor_factor(SEED_K) == P("1 - t + t^2")

    def test_trefoil(self):
        assert not fox_milnor(TREFOIL)

    def test_gl(self):
        f = fox_milnor_factor(GL)
        assert f is not None and (associated(f, P("t - 2")) or associated(f, P("2t - 1")))


class TestLagrangianSearch:
    def test_seed_hyperbolic(self):
        w = find_hyperbolic_basis(SEED_K, 2)
        assert w is not None and w.verify(SEED_K)
        C = w.congruent(SEED_K)
        assert all(C[i, j] == 0 for i in range(2) for j in range(2))
        assert all(C[i, j] == 0 for i in range(2, 4) for j in range(2, 4))

    def test_seed_published_basis(self):
        # y-coordinates of x1, x3, x2 - x1, x4 - x3 as columns
        cols = [(1, 0, 0, 1), (0, 1, 1, 0), (-1, 0, 1, -1), (1, -1, -1, 0)]
        Pm = Matrix([[c[i] for c in cols] for i in range(4)])
        assert LagrangianWitness(Pm, "hyperbolic").verify(SEED_K)

    def test_gl_identity(self):
        w = find_hyperbolic_basis(GL, 1)
        assert w is not None and w.basis_change == Matrix.identity(2)

    def test_trefoil_none(self):
        assert find_metabolizer(TREFOIL, 3) is None
        assert find_hyperbolic_basis(TREFOIL, 3) is None

    def test_trefoil_sum_inverse_metabolic(self):
        K = connected_sum(TREFOIL, inverse(TREFOIL))
        w = find_metabolizer(K, 2)
        assert w is not None and w.verify(K)

    def test_genus_zero(self):
        assert find_metabolizer(UNKNOT, 1).verify(UNKNOT)

    def test_catalog_and_stabilized_implications(self):
        r = random.Random(SEED)
        forms = [SEED_K, GL, TREFOIL, FIVE_TWO, stabilize(GL), stabilize(TREFOIL)]
        forms += [SeifertForm.from_rows(random_seifert_rows(r, 1)) for _ in range(6)]
        for S in forms:
            met = find_metabolizer(S, 2)
            hyp = find_hyperbolic_basis(S, 2)
            if hyp is not None:
                assert hyp.verify(S) and met is not None
            if met is not None:
                assert met.verify(S) and fox_milnor(S)


def test_witness_rejects_wrong_blocks():
    assert not LagrangianWitness(Matrix.identity(4), "metabolic").verify(SEED_K)
