import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from infodecomp._kernels import (USE_NUMBA, _project_simplex_row, cmi_bits,
                                 entropy_bits, mi_bits)


def ref_entropy(p):
    p = p.ravel()
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


class TestShannonCores:
    def test_entropy_matches_vectorized_reference(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 7, 64):
            p = rng.dirichlet(np.ones(n))
            assert entropy_bits(p) == pytest.approx(ref_entropy(p), abs=1e-13)

    def test_entropy_skips_zero_cells(self):
        p = np.array([0.5, 0.0, 0.5])
        assert entropy_bits(p) == 1.0

    def test_mi_of_product_is_zero(self):
        rng = np.random.default_rng(1)
        a = rng.dirichlet(np.ones(3))
        b = rng.dirichlet(np.ones(4))
        assert mi_bits(np.outer(a, b)) == pytest.approx(0.0, abs=1e-13)

    def test_mi_of_identity_is_input_entropy(self):
        j = np.diag([0.2, 0.3, 0.5])
        assert mi_bits(j) == pytest.approx(ref_entropy(np.array([0.2, 0.3, 0.5])))

    def test_cmi_chain_identity(self):
        # I(A;B|C) = H(A,C) + H(B,C) - H(C) - H(A,B,C)
        rng = np.random.default_rng(2)
        j = rng.dirichlet(np.ones(24)).reshape(2, 3, 4)
        want = (ref_entropy(j.sum(axis=1)) + ref_entropy(j.sum(axis=0))
                - ref_entropy(j.sum(axis=(0, 1))) - ref_entropy(j))
        assert cmi_bits(j) == pytest.approx(want, abs=1e-13)


class TestSimplexProjection:
    def test_point_on_simplex_is_fixed(self):
        rng = np.random.default_rng(3)
        for n in (2, 5, 16):
            p = rng.dirichlet(np.ones(n))
            assert np.abs(_project_simplex_row(p.copy()) - p).max() < 1e-12

    def test_output_is_on_simplex(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            v = rng.normal(scale=10.0, size=rng.integers(2, 12))
            out = _project_simplex_row(v)
            assert out.min() >= 0.0
            assert out.sum() == pytest.approx(1.0, abs=1e-12)

    def test_shift_invariance(self):
        rng = np.random.default_rng(5)
        v = rng.normal(size=6)
        a = _project_simplex_row(v.copy())
        b = _project_simplex_row(v + 123.456)
        assert np.abs(a - b).max() < 1e-12

    def test_huge_values_do_not_break_the_running_sum(self):
        # entries at 2^53 used to defeat the (css - 1) pivot test
        v = np.array([2.0 ** 53, 2.0 ** 53 - 512.0, 0.0])
        out = _project_simplex_row(v)
        assert out.min() >= 0.0
        assert out.sum() == pytest.approx(1.0, abs=1e-12)
        assert out[2] == 0.0

    def test_projection_is_euclidean_nearest(self):
        rng = np.random.default_rng(6)
        v = rng.normal(size=4)
        out = _project_simplex_row(v.copy())
        for _ in range(200):
            p = rng.dirichlet(np.ones(4))
            assert np.sum((v - out) ** 2) <= np.sum((v - p) ** 2) + 1e-12


NUMPY_LANE_SCRIPT = textwrap.dedent("""
    import json
    import numpy as np
    from infodecomp import _kernels
    assert not _kernels.USE_NUMBA
    rng = np.random.default_rng(9)
    j = rng.dirichlet(np.ones(12)).reshape(2, 3, 2)
    from infodecomp.common_info import wyner_common_information
    from infodecomp.core_prob import JointPMF
    rep = wyner_common_information(JointPMF.from_array(j.sum(axis=2)),
                                   q_card=2, restarts=2, seed=0)
    out = {
        "entropy": _kernels.entropy_bits(j),
        "mi": _kernels.mi_bits(j.sum(axis=2)),
        "cmi": _kernels.cmi_bits(j),
        "wyner": rep.value,
    }
    print(json.dumps(out))
""")


@pytest.mark.skipif(not USE_NUMBA, reason="already running on the numpy lane")
def test_numpy_lane_matches_numba_lane():
    import json

    from infodecomp import _kernels
    from infodecomp.common_info import wyner_common_information
    from infodecomp.core_prob import JointPMF

    rng = np.random.default_rng(9)
    j = rng.dirichlet(np.ones(12)).reshape(2, 3, 2)
    rep = wyner_common_information(JointPMF.from_array(j.sum(axis=2)),
                                   q_card=2, restarts=2, seed=0)
    here = {
        "entropy": _kernels.entropy_bits(j),
        "mi": _kernels.mi_bits(j.sum(axis=2)),
        "cmi": _kernels.cmi_bits(j),
        "wyner": rep.value,
    }
    env = dict(os.environ, INFODECOMP_NO_NUMBA="1")
    proc = subprocess.run([sys.executable, "-c", NUMPY_LANE_SCRIPT], env=env,
                          capture_output=True, text=True, check=True)
    there = json.loads(proc.stdout)
    for key, val in here.items():
        assert there[key] == pytest.approx(val, abs=1e-12), key
