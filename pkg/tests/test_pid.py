import numpy as np
import pytest

from infodecomp.battery import (make_and_gate, make_copy_both,
                                make_decomposable, make_xor)
from infodecomp.core_prob import (JointPMF, PMFValidationError, marginalize,
                                  mutual_information)
from infodecomp.pid import (check_wb_axioms, conditional_gk,
                            consistency_residual, condgk_consistency_residual,
                            find_consistency_witness, gk_redundancy,
                            gk_redundancy_measure, pid_atoms, unique_from_cmi,
                            unique_from_conditional_gk, unique_from_intrinsic)


def random_pmf(seed, shape):
    rng = np.random.default_rng(seed)
    return JointPMF.from_array(
        rng.dirichlet(np.ones(int(np.prod(shape)))).reshape(shape))


class TestAtoms:
    def test_bookkeeping_identities(self):
        p = random_pmf(4, (2, 2, 2))
        red = gk_redundancy(p)["i_bits"]
        atoms = pid_atoms(p, red)
        i1 = mutual_information(marginalize(p, [0, 2]))
        i2 = mutual_information(marginalize(p, [1, 2]))
        assert atoms.redundant + atoms.unique1 == pytest.approx(i1, abs=1e-12)
        assert atoms.redundant + atoms.unique2 == pytest.approx(i2, abs=1e-12)
        itot = mutual_information(JointPMF.from_array(p.mass.reshape(4, 2)))
        assert atoms.total() == pytest.approx(itot, abs=1e-12)

    def test_xor_with_zero_redundancy(self):
        atoms = pid_atoms(make_xor().pmf, 0.0)
        assert atoms.redundant == 0.0
        assert atoms.unique1 == pytest.approx(0.0, abs=1e-12)
        assert atoms.unique2 == pytest.approx(0.0, abs=1e-12)
        assert atoms.synergistic == pytest.approx(1.0, abs=1e-12)

    def test_negative_synergy_flagged_not_clamped(self):
        # Y = X1 = X2 with zero redundancy: synergy = I_tot - I1 - I2 = -1
        mass = np.zeros((2, 2, 2))
        mass[0, 0, 0] = 0.5
        mass[1, 1, 1] = 0.5
        atoms = pid_atoms(JointPMF.from_array(mass), 0.0)
        assert atoms.synergistic == pytest.approx(-1.0, abs=1e-12)
        assert atoms.negative_synergy

    def test_redundancy_range_enforced(self):
        p = make_and_gate().pmf
        with pytest.raises(PMFValidationError):
            pid_atoms(p, 5.0)
        with pytest.raises(PMFValidationError):
            pid_atoms(p, -0.5)


class TestGKRedundancy:
    def test_zero_on_indecomposable_pair(self):
        # full-support predictor coupling: the meet is trivial
        p = random_pmf(7, (2, 2, 3))
        res = gk_redundancy(p)
        assert res["c_bits"] >= res["i_bits"] - 1e-12
        assert res["i_bits"] == 0.0

    def test_copy_level_on_decomposable_family(self):
        # X1 = (Q,U), X2 = (Q,V), Y = Q: redundancy exactly H(Q) = 1
        rng = np.random.default_rng(0)
        mass = np.zeros((4, 4, 2))
        for q in range(2):
            for u in range(2):
                for v in range(2):
                    mass[2 * q + u, 2 * q + v, q] = 1.0 / 8.0
        p = JointPMF.from_array(mass)
        res = gk_redundancy(p)
        assert res["i_bits"] == pytest.approx(1.0, abs=1e-12)
        assert res["c_bits"] == pytest.approx(1.0, abs=1e-12)

    def test_trivial_common_rv_gives_zero_on_copy_both(self):
        # X1 and X2 are independent, so Q = X1 ^ X2 is trivial and both
        # C = H(Q ^ Y) and I(Q;Y) vanish
        res = gk_redundancy(make_copy_both().pmf)
        assert res["c_bits"] == 0.0
        assert res["i_bits"] == 0.0


class TestAxioms:
    def test_gk_measure_satisfies_gp_s_i(self):
        battery = [random_pmf(s, (2, 2, 2)) for s in range(6)]
        battery += [make_xor().pmf, make_and_gate().pmf]
        violations = check_wb_axioms(gk_redundancy_measure(), battery)
        assert violations == []

    def test_monotonicity_checked_on_arity4(self):
        battery = [random_pmf(9, (2, 2, 2, 2))]
        violations = check_wb_axioms(gk_redundancy_measure(), battery)
        assert all(v["axiom"] != "M" or v["k3"] > v["k2"] for v in violations)


class TestUniqueCandidates:
    def test_cmi_unique_satisfies_consistency_identically(self):
        for seed in range(8):
            p = random_pmf(40 + seed, (2, 3, 2))
            assert consistency_residual(unique_from_cmi, p) < 1e-9

    def test_intrinsic_unique_below_cmi_unique(self):
        p = random_pmf(3, (2, 2, 2))
        for which in (1, 2):
            ui = unique_from_intrinsic(p, which, restarts=6, seed=0)
            uc = unique_from_cmi(p, which)
            assert ui <= uc + 1e-6

    def test_witness_search_finds_violation(self):
        found = find_consistency_witness(seed=0, max_tries=200)
        assert found is not None
        _, residual = found
        assert residual > 1e-3


class TestConditionalGK:
    def test_copy_both_both_uniques_one(self):
        p = make_copy_both().pmf
        assert unique_from_conditional_gk(p, 1, seed=0) == pytest.approx(
            1.0, abs=2e-3)
        assert unique_from_conditional_gk(p, 2, seed=0) == pytest.approx(
            1.0, abs=2e-3)

    def test_value_between_zero_and_cmi(self):
        p = random_pmf(11, (2, 2, 2))
        for which in (1, 2):
            u = unique_from_conditional_gk(p, which, seed=0)
            assert 0.0 <= u <= unique_from_cmi(p, which) + 1e-6

    def test_achiever_channel_shape(self):
        p = make_copy_both().pmf
        rot = JointPMF.from_array(
            np.ascontiguousarray(np.transpose(p.mass, (2, 0, 1))))
        rep = conditional_gk(rot, q_card=4, seed=0)
        assert rep.bound_kind == "lower"
        assert rep.achiever.rows.shape == (4 * 2, 4)

    def test_condgk_consistency_residual_small_on_resolvable_pairs(self):
        for nd in (make_xor(), make_copy_both()):
            assert condgk_consistency_residual(nd.pmf, seed=0) <= 2e-3
