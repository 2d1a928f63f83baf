"""Conditional information bottleneck.

Optimizes a stochastic encoder p(t|y) to trade compression I(Y;T) against
the relevant unique information I(X1;T|X2), minimizing
I(Y;T) - beta * I(X1;T|X2) by monotone projected gradient descent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .common_info import Channel
from .core_prob import JointPMF, PMFValidationError, Alphabet


@dataclass(frozen=True)
class BottleneckSolution:
    encoder: Channel
    beta: float
    compression: float
    relevance: float
    objective: float
    trace: np.ndarray
    converged: bool
    seed: int


def _starts(ny, t_card, restarts, rng, warm=None):
    starts = []
    if warm is not None:
        starts.append(warm.copy())
    uniform = np.full((ny, t_card), 1.0 / t_card)
    starts.append(uniform)
    if t_card == ny:
        starts.append(np.eye(ny))
    else:
        det = np.zeros((ny, t_card))
        for y in range(ny):
            det[y, y % t_card] = 1.0
        starts.append(det)
    while len(starts) < restarts:
        starts.append(rng.dirichlet(np.ones(t_card), size=ny))
    return starts[:max(restarts, len(starts))]


def cib_optimize(p: JointPMF, t_card: int | None = None, beta: float = 1.0,
                 restarts: int = 8, seed: int = 0,
                 max_iters: int = 400, _warm=None) -> BottleneckSolution:
    """Best-of-restarts encoder for one beta.

    The uniform and (when representable) identity encoders are always among
    the starts, so the beta -> 0 and beta -> infinity limits are reachable.
    """
    if p.arity != 3:
        raise PMFValidationError("cib_optimize expects a (X1,X2,Y) pmf")
    if t_card is None:
        t_card = p.shape[2]
    if t_card < 1:
        raise PMFValidationError("t_card must be >= 1")
    if beta < 0:
        raise PMFValidationError("beta must be nonnegative")
    ny = p.shape[2]
    rng = np.random.default_rng(seed)
    best = None
    for enc0 in _starts(ny, t_card, restarts, rng, warm=_warm):
        enc, trace, n_trace, conv = _kernels.cib_descent(
            p.mass, np.ascontiguousarray(enc0, dtype=np.float64), beta,
            max_iters, 1e-5)
        obj, comp, rel = _kernels.cib_objective(p.mass, enc, beta)
        cand = (float(obj), enc, np.asarray(trace)[:n_trace].copy(), bool(conv),
                float(comp), float(rel))
        if best is None or cand[0] < best[0]:
            best = cand
    obj, enc, trace, conv, comp, rel = best
    enc = enc / enc.sum(axis=1, keepdims=True)
    t_alpha = Alphabet(tuple(f"t{i}" for i in range(t_card)))
    return BottleneckSolution(
        encoder=Channel(p.alphabets[2], t_alpha, enc), beta=float(beta),
        compression=max(comp, 0.0), relevance=max(rel, 0.0), objective=obj,
        trace=trace, converged=conv, seed=seed)


def beta_sweep(p: JointPMF, t_card: int | None = None, betas=(),
               restarts: int = 8, seed: int = 0,
               max_iters: int = 400) -> list[BottleneckSolution]:
    """One solution per beta, warm-started from the previous beta's encoder
    (deterministic annealing).  betas must be sorted ascending."""
    betas = list(betas)
    if betas != sorted(betas):
        raise PMFValidationError("betas must be sorted ascending")
    solutions = []
    warm = None
    for beta in betas:
        sol = cib_optimize(p, t_card=t_card, beta=beta, restarts=restarts,
                           seed=seed, max_iters=max_iters, _warm=warm)
        warm = sol.encoder.rows
        solutions.append(sol)
    return solutions


def _fold_exact(row, target):
    """Nudge one entry of row by ulps until row.sum() == target."""
    row = row.copy()
    if row.sum() == target:
        return row
    for k in np.argsort(row)[::-1]:
        orig = row[k]
        others = row.copy()
        others[k] = 0.0
        base = max(target - others.sum(), 0.0)
        for direction in (np.inf, -np.inf):
            cand = base
            for _ in range(256):
                row[k] = cand
                if row.sum() == target:
                    return row
                cand = np.nextafter(cand, direction)
                if cand < 0.0:
                    break
        row[k] = orig
    return row


def four_variable_joint(p: JointPMF, encoder: Channel) -> JointPMF:
    """The Markov factorization p(x1,x2,y,t) = p(x1,x2,y) p(t|y); its
    (x1,x2,y)-marginal reproduces the input exactly by construction."""
    mass4 = p.mass[:, :, :, None] * encoder.rows[None, None, :, :]
    # fold the rounding residue of the t-sum into the heaviest t slot so
    # summing out t returns the input masses bit for bit
    for idx in np.ndindex(p.shape):
        mass4[idx] = _fold_exact(mass4[idx], p.mass[idx])
    return JointPMF(p.alphabets + (encoder.output,), mass4, p.support_eps)
