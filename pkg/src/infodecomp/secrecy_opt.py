"""Intrinsic conditional information, union information and synergy.

Intrinsic information minimizes I(X1;X2|Y') over post-processing channels
p(y'|y); union information minimizes I(X1X2;Y') over the polytope of joints
preserving both predictor-target pairwise marginals.  Synergy is the whole
minus the union of parts, computable through either route.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .common_info import Channel, FEAS_TOL, OptReport
from .core_prob import (Alphabet, JointPMF, PMFValidationError, clamp_info,
                        conditional_mutual_information, marginalize,
                        mutual_information, entropy, joint_entropy)


def _require_arity3(p: JointPMF, who: str):
    if p.arity != 3:
        raise PMFValidationError(f"{who} expects a three-variable pmf (X1,X2,Y)")


def intrinsic_information(p: JointPMF, yprime_card: int | None = None,
                          restarts: int = 16, seed: int = 0,
                          max_iters: int = 300) -> OptReport:
    """Upper bound on I(X1;X2 | Y down): min over channels p(y'|y) of
    I(X1;X2|Y').  The identity and constant channels are always evaluated
    as exact candidates, so the value never exceeds min(I(X1;X2),
    I(X1;X2|Y))."""
    _require_arity3(p, "intrinsic_information")
    ny = p.shape[2]
    if yprime_card is None:
        yprime_card = ny
    if not 1 <= yprime_card <= ny:
        raise PMFValidationError(
            f"yprime_card must be in [1, |Y|={ny}]")
    value, ch = _kernels.intrinsic_descent(p.mass, yprime_card, seed, restarts,
                                           max_iters, 1e-5, 1e-9)
    candidates = [(float(value), np.asarray(ch))]
    const = np.zeros((ny, yprime_card))
    const[:, 0] = 1.0
    candidates.append((float(_kernels.channel_cmi(p.mass, const)), const))
    if yprime_card == ny:
        ident = np.eye(ny)
        candidates.append((float(_kernels.channel_cmi(p.mass, ident)), ident))
    best_value, best_ch = min(candidates, key=lambda c: c[0])
    yp_alpha = Alphabet(tuple(f"y{i}" for i in range(yprime_card)))
    achiever = Channel(p.alphabets[2], yp_alpha, best_ch)
    return OptReport(value=clamp_info(best_value, "intrinsic information"),
                     achiever=achiever, restarts_run=restarts, converged=True,
                     seed=seed, bound_kind="upper")


def _marginal_constraints(p: JointPMF):
    """Constraint system A q = b pinning both (Xi,Y') pairwise marginals."""
    n1, n2, ny = p.shape
    n = n1 * n2 * ny
    rows = []
    b = []
    m1 = p.mass.sum(axis=1)  # (x1, y)
    m2 = p.mass.sum(axis=0)  # (x2, y)
    for a in range(n1):
        for y in range(ny):
            row = np.zeros(n)
            for bb in range(n2):
                row[(a * n2 + bb) * ny + y] = 1.0
            rows.append(row)
            b.append(m1[a, y])
    for bb in range(n2):
        for y in range(ny):
            row = np.zeros(n)
            for a in range(n1):
                row[(a * n2 + bb) * ny + y] = 1.0
            rows.append(row)
            b.append(m2[bb, y])
    amat = np.array(rows)
    bvec = np.array(b)
    gmat = amat.T @ np.linalg.pinv(amat @ amat.T)
    return amat, gmat, bvec


def union_information(p: JointPMF, restarts: int = 16, seed: int = 0,
                      max_iters: int = 300) -> OptReport:
    """min I(X1X2;Y') over joints matching both (Xi,Y) pairwise marginals.

    The objective is convex on this polytope, so projected descent from the
    (always feasible) input joint reaches the global minimum; extra restarts
    start from Dirichlet perturbations projected back into the polytope."""
    _require_arity3(p, "union_information")
    n1, n2, ny = p.shape
    amat, gmat, bvec = _marginal_constraints(p)
    rng = np.random.default_rng(seed)
    starts = [p.mass.ravel().copy()]
    for _ in range(max(restarts - 1, 0)):
        noise = rng.dirichlet(np.ones(n1 * n2 * ny))
        starts.append(0.5 * p.mass.ravel() + 0.5 * noise)
    best = None
    for q0 in starts:
        value, qflat, _conv = _kernels.union_descent(
            q0, n1, n2, ny, amat, gmat, bvec, max_iters, 1e-5)
        dev = float(np.abs(amat @ qflat - bvec).max())
        neg = float(min(qflat.min(), 0.0))
        if dev <= FEAS_TOL and neg >= -FEAS_TOL:
            if best is None or value < best[0]:
                best = (float(value), qflat, dev)
    if best is None:
        # never expected: the input joint itself is feasible
        return OptReport(value=float("nan"), achiever=None,
                         restarts_run=len(starts), converged=False, seed=seed,
                         bound_kind="upper")
    value, qflat, dev = best
    mass = np.where(qflat < 0.0, 0.0, qflat).reshape(n1, n2, ny)
    mass = mass / mass.sum()
    yp_alpha = Alphabet(tuple(f"y{i}" for i in range(ny)))
    achiever = JointPMF((p.alphabets[0], p.alphabets[1], yp_alpha), mass,
                        p.support_eps)
    return OptReport(value=clamp_info(value, "union information"),
                     achiever=achiever, restarts_run=len(starts),
                     converged=True, seed=seed, bound_kind="upper",
                     diagnostics={"marginal_deviation": dev})


def synergy_gk(p: JointPMF, restarts: int = 16, seed: int = 0) -> dict:
    """Whole-minus-union synergy via both routes.

    via_intrinsic = I(X1;X2|Y) - intrinsic; via_union = I(X1X2;Y) - union.
    The gap between the two routes is reported, not asserted.
    """
    _require_arity3(p, "synergy_gk")
    intr = intrinsic_information(p, restarts=restarts, seed=seed)
    uni = union_information(p, restarts=restarts, seed=seed)
    cmi = conditional_mutual_information(
        JointPMF(p.alphabets, p.mass, p.support_eps))
    n1, n2, ny = p.shape
    whole = mutual_information(JointPMF.from_array(
        p.mass.reshape(n1 * n2, ny)))
    via_intrinsic = cmi - intr.value
    clamped = False
    if -1e-6 <= via_intrinsic < 0.0:
        via_intrinsic = 0.0
        clamped = True
    via_union = clamp_info(whole - uni.value, "synergy via union")
    return {
        "via_intrinsic": via_intrinsic,
        "via_union": via_union,
        "gap": via_intrinsic - via_union,
        "clamped": clamped,
        "intrinsic_report": intr,
        "union_report": uni,
    }


def lockability_bound_check(p: JointPMF, p_ext: JointPMF,
                            restarts: int = 8, seed: int = 0) -> dict:
    """Check |I(X1;X2|YY1) - I(X1;X2|Y)| <= H(Y1) and report (unbounded)
    the corresponding synergy difference under extended conditioning."""
    _require_arity3(p, "lockability_bound_check")
    if p_ext.arity != 4:
        raise PMFValidationError("p_ext must be a four-variable pmf (X1,X2,Y,Y1)")
    marg = p_ext.mass.sum(axis=3)
    if np.abs(marg - p.mass).max() > 1e-9:
        raise PMFValidationError("p is not the Y1-marginal of p_ext")
    n1, n2, ny, ny1 = p_ext.shape
    joint_yy1 = p_ext.mass.reshape(n1, n2, ny * ny1)
    cmi_ext = clamp_info(float(_kernels.cmi_bits(joint_yy1)), "I(X1;X2|YY1)")
    cmi_base = conditional_mutual_information(p)
    h_y1 = entropy(marginalize(p_ext, [3]))
    diff = cmi_ext - cmi_base
    holds = abs(diff) <= h_y1 + 1e-9

    p_yy1 = JointPMF.from_array(joint_yy1)
    intr_ext = intrinsic_information(p_yy1, restarts=restarts, seed=seed)
    intr_base = intrinsic_information(p, restarts=restarts, seed=seed)
    synergy_diff = (cmi_ext - intr_ext.value) - (cmi_base - intr_base.value)
    return {
        "cmi_extended": cmi_ext,
        "cmi_base": cmi_base,
        "h_y1": h_y1,
        "cmi_difference": diff,
        "inequality_holds": bool(holds),
        "synergy_difference": synergy_diff,
    }


def intrinsic_grid_oracle(p: JointPMF, resolution: float = 0.01) -> float:
    """Exhaustive channel-grid oracle; binary Y and Y' only."""
    _require_arity3(p, "intrinsic_grid_oracle")
    if p.shape[2] != 2:
        raise PMFValidationError("grid oracle supports binary Y only")
    return float(_kernels.intrinsic_grid_binary(p.mass, resolution))


def union_grid_oracle(p: JointPMF, resolution: float = 0.005) -> float:
    """Exhaustive marginal-polytope grid oracle; 2x2x2 pmfs only."""
    _require_arity3(p, "union_grid_oracle")
    if p.shape != (2, 2, 2):
        raise PMFValidationError("grid oracle supports 2x2x2 pmfs only")
    return float(_kernels.union_grid_2x2x2(p.mass, resolution))
