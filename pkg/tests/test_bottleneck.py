import numpy as np
import pytest

from infodecomp.battery import make_copy_both, make_xor
from infodecomp.bottleneck import (beta_sweep, cib_optimize,
                                   four_variable_joint)
from infodecomp.core_prob import (JointPMF, PMFValidationError,
                                  conditional_mutual_information)


def random_pmf(seed, shape):
    rng = np.random.default_rng(seed)
    return JointPMF.from_array(
        rng.dirichlet(np.ones(int(np.prod(shape)))).reshape(shape))


def relevant_cmi(p):
    """I(X1;Y|X2) of a (X1,X2,Y) pmf."""
    rot = np.ascontiguousarray(np.transpose(p.mass, (0, 2, 1)))
    return conditional_mutual_information(JointPMF.from_array(rot))


def test_beta_zero_collapses_compression():
    for nd in (make_xor(), make_copy_both()):
        sol = cib_optimize(nd.pmf, beta=0.0, seed=0)
        assert sol.compression <= 1e-3


def test_large_beta_reaches_full_relevance():
    for nd in (make_xor(), make_copy_both()):
        sol = cib_optimize(nd.pmf, beta=100.0, seed=0)
        assert sol.relevance == pytest.approx(relevant_cmi(nd.pmf), abs=2e-3)


def test_trace_non_increasing():
    for seed in range(4):
        p = random_pmf(seed, (2, 2, 3))
        sol = cib_optimize(p, beta=1.5, seed=seed)
        assert np.all(np.diff(sol.trace) <= 1e-12)


def test_four_variable_marginal_exact():
    p = random_pmf(7, (2, 2, 3))
    sol = cib_optimize(p, beta=2.0, seed=0)
    p4 = four_variable_joint(p, sol.encoder)
    assert p4.arity == 4
    assert np.abs(p4.mass.sum(axis=3) - p.mass).max() == 0.0


def test_sweep_warm_start_order_enforced():
    p = make_xor().pmf
    with pytest.raises(PMFValidationError):
        beta_sweep(p, betas=[1.0, 0.5])


def test_sweep_objective_weakly_improves_with_beta():
    # at larger beta the optimal objective can only decrease
    p = make_copy_both().pmf
    sols = beta_sweep(p, betas=[0.0, 0.5, 1.0, 2.0, 5.0], seed=0)
    objs = [s.objective for s in sols]
    assert all(b <= a + 1e-9 for a, b in zip(objs, objs[1:]))


def test_relevance_bounded_by_conditional_mi():
    for seed in range(4):
        p = random_pmf(20 + seed, (2, 2, 2))
        sol = cib_optimize(p, beta=3.0, seed=0)
        assert sol.relevance <= relevant_cmi(p) + 1e-9


def test_t_card_one_forces_trivial_encoder():
    p = make_xor().pmf
    sol = cib_optimize(p, t_card=1, beta=5.0, seed=0)
    assert sol.compression == 0.0
    assert sol.relevance == 0.0


def test_beta_validation():
    with pytest.raises(PMFValidationError):
        cib_optimize(make_xor().pmf, beta=-1.0)
    with pytest.raises(PMFValidationError):
        cib_optimize(random_pmf(0, (2, 2)), beta=1.0)
