"""Bivariate partial-information decomposition.

Atom bookkeeping from the K=2 PI-diagram, the meet-based zero-error
redundancy, Williams-Beer axiom checking, the unique-information
consistency condition, and the conditional Gacs-Korner candidate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .common_info import Channel, OptReport
from .core_prob import (Alphabet, JointPMF, PMFValidationError, clamp_info,
                        marginalize, mutual_information)
from .info_lattice import join, meet, partition_entropy, pmf_to_partitions
from .secrecy_opt import intrinsic_information

ATOM_TOL = 1e-9


@dataclass(frozen=True)
class PIDAtoms:
    """The four bivariate partial-information atoms, in bits."""

    redundant: float
    unique1: float
    unique2: float
    synergistic: float
    negative_synergy: bool = False

    def total(self) -> float:
        return self.redundant + self.unique1 + self.unique2 + self.synergistic


@dataclass(frozen=True)
class RedundancyMeasure:
    """Named redundancy evaluator; takes a pmf whose last axis is the target."""

    name: str
    evaluator: object


def _predictor_target_mis(p: JointPMF):
    n1, n2, ny = p.shape
    i1 = mutual_information(marginalize(p, [0, 2]))
    i2 = mutual_information(marginalize(p, [1, 2]))
    itot = mutual_information(JointPMF.from_array(p.mass.reshape(n1 * n2, ny)))
    return i1, i2, itot


def pid_atoms(p: JointPMF, redundancy: float) -> PIDAtoms:
    """Solve the PI-diagram bookkeeping for a given redundancy value.

    Negative synergy is reported and flagged rather than clamped.
    """
    if p.arity != 3:
        raise PMFValidationError("pid_atoms expects a three-variable pmf")
    i1, i2, itot = _predictor_target_mis(p)
    if not -ATOM_TOL <= redundancy <= min(i1, i2) + ATOM_TOL:
        raise PMFValidationError(
            f"redundancy {redundancy} outside [0, min(I1,I2)={min(i1, i2)}]")
    unique1 = i1 - redundancy
    unique2 = i2 - redundancy
    synergistic = itot - i1 - i2 + redundancy
    return PIDAtoms(redundant=redundancy, unique1=unique1, unique2=unique2,
                    synergistic=synergistic,
                    negative_synergy=synergistic < -ATOM_TOL)


def gk_redundancy(p: JointPMF) -> dict:
    """Meet-based zero-error redundancy of K predictors about the target.

    The last axis is the target Y; Q = X1 ^ ... ^ XK is computed on the
    support.  Returns c_bits = H(Q ^ Y) and i_bits = I(Q;Y).
    """
    if p.arity < 2:
        raise PMFValidationError("gk_redundancy needs at least one predictor")
    space, parts = pmf_to_partitions(p)
    q = parts[0]
    for part in parts[1:-1]:
        q = meet(q, part)
    y_part = parts[-1]
    c_bits = partition_entropy(meet(q, y_part))
    i_bits = clamp_info(
        partition_entropy(q) + partition_entropy(y_part)
        - partition_entropy(join(q, y_part)), "I(Q;Y)")
    return {"c_bits": c_bits, "i_bits": i_bits}


def gk_redundancy_measure() -> RedundancyMeasure:
    return RedundancyMeasure("gk_meet_redundancy",
                             lambda pmf: gk_redundancy(pmf)["i_bits"])


def check_wb_axioms(measure: RedundancyMeasure, battery) -> list[dict]:
    """Evaluate the Williams-Beer axioms on each pmf; violations are data.

    GP: value >= -1e-9.  S: invariance under predictor swap.  I: on the
    single-predictor reduction the measure equals I(X1;Y).  M: dropping a
    predictor does not decrease the value (checked on K=3 inputs).
    """
    violations = []
    for idx, p in enumerate(battery):
        value = measure.evaluator(p)
        if value < -ATOM_TOL:
            violations.append({"pmf": idx, "axiom": "GP", "value": value})
        perm = tuple(range(p.arity))
        swapped = JointPMF.from_array(
            np.ascontiguousarray(np.swapaxes(p.mass, 0, 1)))
        sval = measure.evaluator(swapped)
        if abs(sval - value) > ATOM_TOL:
            violations.append({"pmf": idx, "axiom": "S",
                               "value": value, "swapped": sval})
        single = marginalize(p, [0, p.arity - 1])
        ival = measure.evaluator(single)
        expect = mutual_information(single)
        if abs(ival - expect) > ATOM_TOL:
            violations.append({"pmf": idx, "axiom": "I",
                               "value": ival, "expected": expect})
        if p.arity == 4:
            reduced = marginalize(p, [0, 1, 3])
            v3 = measure.evaluator(p)
            v2 = measure.evaluator(reduced)
            if v3 > v2 + ATOM_TOL:
                violations.append({"pmf": idx, "axiom": "M",
                                   "k3": v3, "k2": v2})
    return violations


# ---------------------------------------------------------------------------
# Unique-information evaluators and the consistency condition
# ---------------------------------------------------------------------------

def unique_from_cmi(p: JointPMF, which: int) -> float:
    """I(Y;X_which|X_other): the chain-rule-consistent baseline."""
    axes = (2, 0, 1) if which == 1 else (2, 1, 0)
    rot = np.ascontiguousarray(np.transpose(p.mass, axes))
    return clamp_info(float(_kernels.cmi_bits(rot)), "conditional MI")


def unique_from_intrinsic(p: JointPMF, which: int, restarts: int = 8,
                          seed: int = 0) -> float:
    """I(Y;X_which down X_other): intrinsic information as unique candidate."""
    axes = (2, 0, 1) if which == 1 else (2, 1, 0)
    rot = JointPMF.from_array(np.ascontiguousarray(np.transpose(p.mass, axes)))
    return intrinsic_information(rot, restarts=restarts, seed=seed).value


def consistency_residual(u, p: JointPMF) -> float:
    """|I(Y;X1) + u(Y;X2|X1) - I(Y;X2) - u(Y;X1|X2)|."""
    if p.arity != 3:
        raise PMFValidationError("consistency_residual expects arity 3")
    i1 = mutual_information(marginalize(p, [0, 2]))
    i2 = mutual_information(marginalize(p, [1, 2]))
    return abs(i1 + u(p, 2) - i2 - u(p, 1))


def find_consistency_witness(seed: int = 0, max_tries: int = 200,
                             threshold: float = 1e-3):
    """Search random 2x2x2 pmfs for one where intrinsic-information-as-unique
    violates the consistency condition.  Returns (pmf, residual) or None."""
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        mass = rng.dirichlet(np.ones(8)).reshape(2, 2, 2)
        p = JointPMF.from_array(mass)
        res = consistency_residual(
            lambda q, w: unique_from_intrinsic(q, w, restarts=6, seed=seed), p)
        if res > threshold:
            return p, res
    return None


# ---------------------------------------------------------------------------
# Conditional Gacs-Korner CI
# ---------------------------------------------------------------------------

def _condgk_oracle(p: JointPMF, q_card: int):
    """Exhaustive deterministic maps q = f(y, x2); lower bound on the max."""
    ny, n1, n2 = p.shape
    ncells = ny * n2
    best = 0.0
    best_rows = None
    for assign in itertools.product(range(q_card), repeat=ncells):
        rows = np.zeros((ncells, q_card))
        for c, q in enumerate(assign):
            rows[c, q] = 1.0
        i_main, i_feas = _kernels.condgk_terms(p.mass, rows)
        if i_feas <= 1e-9 and i_main > best:
            best = i_main
            best_rows = rows
    return best, best_rows


def conditional_gk(p: JointPMF, q_card: int = 4, restarts: int = 8,
                   seed: int = 0, iters_per_stage: int = 150) -> OptReport:
    """Lower bound on C_GK(Y;X1|X2) = max I(YX1;Q|X2) over Q with
    Q-(Y,X2)-X1 (structural) and Y-(X1,X2)-Q (penalized to zero).

    Input axes are ordered (Y, X1, X2).  For |Y||X2| <= 8 and q_card <= 4 an
    exhaustive deterministic-map oracle is also run and the larger value kept.
    """
    if p.arity != 3:
        raise PMFValidationError("conditional_gk expects a (Y,X1,X2) pmf")
    ny, n1, n2 = p.shape
    value, feas, rows = _kernels.condgk_descent(
        p.mass, q_card, seed, restarts, iters_per_stage, 1e-5, 1e-9)
    candidates = []
    if feas <= 1e-6:
        candidates.append((float(value), np.asarray(rows), float(feas)))
    if ny * n2 <= 8 and q_card <= 4:
        obest, orows = _condgk_oracle(p, q_card)
        if orows is not None:
            candidates.append((float(obest), orows, 0.0))
    if not candidates:
        return OptReport(value=float(value), achiever=None,
                         restarts_run=restarts, converged=False, seed=seed,
                         bound_kind="lower",
                         diagnostics={"feasibility": float(feas)})
    best_value, best_rows, best_feas = max(candidates, key=lambda c: c[0])
    in_alpha = Alphabet(tuple(
        f"{y},{x2}" for y in p.alphabets[0].labels for x2 in p.alphabets[2].labels))
    q_alpha = Alphabet(tuple(f"q{i}" for i in range(q_card)))
    achiever = Channel(in_alpha, q_alpha, best_rows)
    return OptReport(value=clamp_info(best_value, "conditional GK"),
                     achiever=achiever, restarts_run=restarts, converged=True,
                     seed=seed, bound_kind="lower",
                     diagnostics={"feasibility": best_feas})


def unique_from_conditional_gk(p: JointPMF, which: int, q_card: int = 4,
                               restarts: int = 8, seed: int = 0) -> float:
    """C_GK(Y;X_which|X_other) from a predictor-ordered pmf (X1,X2,Y)."""
    axes = (2, 0, 1) if which == 1 else (2, 1, 0)
    rot = JointPMF.from_array(np.ascontiguousarray(np.transpose(p.mass, axes)))
    return conditional_gk(rot, q_card=q_card, restarts=restarts, seed=seed).value


def condgk_consistency_residual(p: JointPMF, q_card: int = 4, restarts: int = 8,
                 seed: int = 0) -> float:
    """Consistency residual of conditional GK as unique information,
    |I(Y;X1) + C_GK(Y;X2|X1) - I(Y;X2) - C_GK(Y;X1|X2)|, on a predictor-
    ordered (X1,X2,Y) pmf."""
    return consistency_residual(
        lambda q, w: unique_from_conditional_gk(q, w, q_card=q_card,
                                                restarts=restarts, seed=seed),
        p)
