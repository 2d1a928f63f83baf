import math

import numpy as np
import pytest

from infodecomp.core_prob import (Alphabet, InfoValueError, JointPMF,
                                  PMFValidationError, clamp_info, condition,
                                  conditional_mutual_information, dump_pmf,
                                  entropy, format_pmf, joint_entropy,
                                  load_pmf, marginalize, mutual_information,
                                  parse_pmf_text)


def uniform(shape):
    n = int(np.prod(shape))
    return JointPMF.from_array(np.full(shape, 1.0 / n))


class TestValidation:
    def test_rejects_bad_sum(self):
        with pytest.raises(PMFValidationError):
            JointPMF.from_array(np.array([0.5, 0.4]))

    def test_rejects_negative_mass(self):
        with pytest.raises(PMFValidationError):
            JointPMF.from_array(np.array([1.1, -0.1]))

    def test_clips_float_noise_negatives(self):
        p = JointPMF.from_array(np.array([1.0 + 5e-13, -5e-13]))
        assert p.mass[1] == 0.0

    def test_rejects_arity_zero_and_five(self):
        with pytest.raises(PMFValidationError):
            JointPMF(tuple(), np.array(1.0))
        with pytest.raises(PMFValidationError):
            uniform((2, 2, 2, 2, 2))

    def test_arity_four_allowed_for_extended_targets(self):
        assert uniform((2, 2, 2, 2)).arity == 4

    def test_alphabet_uniqueness(self):
        with pytest.raises(PMFValidationError):
            Alphabet(("a", "a"))

    def test_alphabet_cap(self):
        with pytest.raises(PMFValidationError):
            Alphabet(tuple(str(i) for i in range(65)))

    def test_mass_is_read_only(self):
        p = uniform((2, 2))
        with pytest.raises(ValueError):
            p.mass[0, 0] = 0.9


class TestShannonQuantities:
    def test_uniform_entropy(self):
        assert entropy(uniform((8,))) == pytest.approx(3.0, abs=1e-12)

    def test_deterministic_entropy_zero(self):
        p = JointPMF.from_array(np.array([1.0, 0.0, 0.0]))
        assert entropy(p) == 0.0

    def test_mi_independent_zero(self):
        assert mutual_information(uniform((3, 4))) == 0.0

    def test_mi_perfectly_correlated(self):
        p = JointPMF.from_array(np.eye(4) / 4.0)
        assert mutual_information(p) == pytest.approx(2.0, abs=1e-12)

    def test_cmi_chain_rule(self):
        # I(A;BC) = I(A;B) + I(A;C|B) on a random joint
        rng = np.random.default_rng(11)
        mass = rng.dirichlet(np.ones(24)).reshape(2, 3, 4)
        p = JointPMF.from_array(mass)
        i_a_bc = mutual_information(JointPMF.from_array(mass.reshape(2, 12)))
        i_a_b = mutual_information(marginalize(p, [0, 1]))
        rot = np.ascontiguousarray(np.transpose(mass, (0, 2, 1)))  # (a, c, b)
        i_a_c_given_b = conditional_mutual_information(JointPMF.from_array(rot))
        assert i_a_bc == pytest.approx(i_a_b + i_a_c_given_b, abs=1e-10)

    def test_entropy_additivity_independent(self):
        rng = np.random.default_rng(5)
        px = rng.dirichlet(np.ones(3))
        py = rng.dirichlet(np.ones(4))
        p = JointPMF.from_array(np.outer(px, py))
        hx = entropy(marginalize(p, [0]))
        hy = entropy(marginalize(p, [1]))
        assert joint_entropy(p) == pytest.approx(hx + hy, abs=1e-10)

    def test_clamp_info_raises_beyond_tolerance(self):
        assert clamp_info(-5e-10) == 0.0
        with pytest.raises(InfoValueError):
            clamp_info(-1e-6)


class TestMarginalizeCondition:
    def test_marginal_values(self):
        mass = np.array([[0.1, 0.2], [0.3, 0.4]])
        p = JointPMF.from_array(mass)
        mx = marginalize(p, [0])
        assert np.allclose(mx.mass, [0.3, 0.7])

    def test_marginalize_keeps_order(self):
        p = uniform((2, 3, 4))
        assert marginalize(p, [2, 0]).shape == (2, 4)

    def test_marginalize_empty_keep(self):
        with pytest.raises(PMFValidationError):
            marginalize(uniform((2, 2)), [])

    def test_condition_renormalizes(self):
        mass = np.array([[0.1, 0.2], [0.3, 0.4]])
        p = JointPMF.from_array(mass)
        c = condition(p, 0, "0")
        assert np.allclose(c.mass, [1.0 / 3.0, 2.0 / 3.0])

    def test_condition_on_zero_mass_event(self):
        mass = np.array([[0.5, 0.5], [0.0, 0.0]])
        p = JointPMF.from_array(mass)
        with pytest.raises(PMFValidationError):
            condition(p, 0, "1")


class TestTextFormat:
    def test_parse_basic(self):
        p = parse_pmf_text("a x 0.5\nb y 0.5\n")
        assert p.shape == (2, 2)
        assert p.mass[0, 0] == 0.5
        assert p.mass[1, 0] == 0.0  # unlisted cell

    def test_comments_and_blank_lines(self):
        p = parse_pmf_text("# header\n\n0 0.25  # tail comment\n1 0.75\n")
        assert p.shape == (2,)

    def test_arity_mismatch_reports_line(self):
        with pytest.raises(PMFValidationError, match="line 2"):
            parse_pmf_text("a x 0.5\nb 0.5\n")

    def test_duplicate_cell_reports_line(self):
        with pytest.raises(PMFValidationError, match="line 2.*duplicate"):
            parse_pmf_text("a 0.5\na 0.5\n")

    def test_bad_probability_reports_line(self):
        with pytest.raises(PMFValidationError, match="line 1"):
            parse_pmf_text("a oops\n")

    def test_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(3)
        p = JointPMF.from_array(rng.dirichlet(np.ones(6)).reshape(2, 3))
        path = tmp_path / "p.pmf"
        dump_pmf(p, path)
        q = load_pmf(path)
        assert np.array_equal(p.mass, q.mass)
        assert format_pmf(p) == format_pmf(q)

    def test_label_order_first_appearance(self):
        p = parse_pmf_text("z 0.5\na 0.5\n")
        assert p.alphabets[0].labels == ("z", "a")
