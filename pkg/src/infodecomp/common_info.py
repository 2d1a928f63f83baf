"""Common-information characterizations of a joint pmf.

Gacs-Korner via connected components of the zero-pattern bipartite graph,
Wyner via auxiliary-variable minimization, residual information, and the
minimum assisted common information.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core_prob import (Alphabet, JointPMF, PMFValidationError, clamp_info,
                        joint_entropy, marginalize, mutual_information)
from .info_lattice import meet, partition_entropy, pmf_to_partitions

ZIC_TOL = 1e-9
FEAS_TOL = 1e-6


@dataclass(frozen=True)
class BipartiteGraph:
    """Zero-pattern bipartite graph of a two-variable pmf (edges by index)."""

    left: Alphabet
    right: Alphabet
    edges: frozenset

    def edge_labels(self):
        return sorted((self.left.labels[x], self.right.labels[y])
                      for x, y in self.edges)


@dataclass(frozen=True)
class MDCDecomposition:
    """Minimal disjoint components with their probability masses."""

    components: tuple  # of (x_indices, y_indices, mass)
    component_of_x: dict
    component_of_y: dict

    @property
    def k(self) -> int:
        return len(self.components)

    def masses(self) -> np.ndarray:
        return np.array([c[2] for c in self.components])


@dataclass(frozen=True)
class Channel:
    """Row-stochastic conditional law p(out|in)."""

    input: Alphabet
    output: Alphabet
    rows: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.shape != (len(self.input), len(self.output)):
            raise PMFValidationError("channel matrix shape mismatch")
        if rows.min() < -1e-12:
            raise PMFValidationError("channel rows must be nonnegative")
        if np.abs(rows.sum(axis=1) - 1.0).max() > 1e-10:
            raise PMFValidationError("channel rows must sum to 1")
        rows = np.where(rows < 0.0, 0.0, rows)
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)


@dataclass(frozen=True)
class OptReport:
    """Result of a numeric optimization; bound_kind declares its direction."""

    value: float
    achiever: object
    restarts_run: int
    converged: bool
    seed: int
    bound_kind: str
    diagnostics: dict = field(default_factory=dict)


def bipartite_graph(p: JointPMF) -> BipartiteGraph:
    """Edges are exactly the cells with mass above support_eps."""
    if p.arity != 2:
        raise PMFValidationError("bipartite_graph expects a two-variable pmf")
    edges = frozenset((int(x), int(y)) for x, y in zip(*np.where(p.mass > p.support_eps)))
    return BipartiteGraph(p.alphabets[0], p.alphabets[1], edges)


def mdc_decompose(g: BipartiteGraph, p: JointPMF) -> MDCDecomposition:
    """Connected components of the bipartite graph with their masses.

    Zero-mass symbols are dropped; components are ordered by their smallest
    x-index.
    """
    nx, ny = len(g.left), len(g.right)
    parent = list(range(nx + ny))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x, y in g.edges:
        rx, ry = find(x), find(nx + y)
        if rx != ry:
            parent[ry] = rx

    groups: dict[int, list] = {}
    for x in sorted({e[0] for e in g.edges}):
        groups.setdefault(find(x), [[], []])[0].append(x)
    for y in sorted({e[1] for e in g.edges}):
        groups.setdefault(find(nx + y), [[], []])[1].append(y)

    comps = sorted(groups.values(), key=lambda c: c[0][0])
    components = []
    comp_x: dict[int, int] = {}
    comp_y: dict[int, int] = {}
    for cid, (xs, ys) in enumerate(comps):
        mass = float(p.mass[np.ix_(xs, ys)].sum())
        components.append((tuple(xs), tuple(ys), mass))
        for x in xs:
            comp_x[x] = cid
        for y in ys:
            comp_y[y] = cid
    return MDCDecomposition(tuple(components), comp_x, comp_y)


def common_rv(p: JointPMF):
    """The maximal pair of a.s.-agreeing deterministic functions (f, g).

    Maps are keyed by symbol label and cover positive-mass symbols only.
    """
    dec = mdc_decompose(bipartite_graph(p), p)
    f = {p.alphabets[0].labels[x]: c for x, c in dec.component_of_x.items()}
    g = {p.alphabets[1].labels[y]: c for y, c in dec.component_of_y.items()}
    return f, g


def gk_common_information(p: JointPMF) -> float:
    """C_GK(X;Y) = H(X ^ Y): entropy of the MDC mass distribution."""
    dec = mdc_decompose(bipartite_graph(p), p)
    return clamp_info(float(_kernels.entropy_bits(dec.masses())), "C_GK")


def gk_common_information_k(p: JointPMF) -> float:
    """K-argument C_GK via the iterated meet of coordinate partitions."""
    space, parts = pmf_to_partitions(p)
    q = parts[0]
    for part in parts[1:]:
        q = meet(q, part)
    return partition_entropy(q)


def is_zic(component_index: int, p: JointPMF) -> bool:
    """Zero-information component: p(x|y) constant in y inside the component
    and no cross mass leaves it."""
    dec = mdc_decompose(bipartite_graph(p), p)
    if not 0 <= component_index < dec.k:
        raise IndexError(f"component index {component_index} out of range")
    xs, ys, _ = dec.components[component_index]
    py = p.mass.sum(axis=0)
    cols = []
    for y in ys:
        if py[y] <= p.support_eps:
            continue
        cols.append(p.mass[list(xs), y] / py[y])
    for col in cols[1:]:
        if np.abs(col - cols[0]).max() > ZIC_TOL:
            return False
    # Isolation: mass from outside x-symbols into this component's y-symbols.
    other_x = [x for x in range(len(p.alphabets[0])) if x not in xs]
    if other_x and p.mass[np.ix_(other_x, list(ys))].max() > p.support_eps:
        return False
    return True


def _joint_with_common_rv(p: JointPMF) -> JointPMF:
    """Extend (X,Y) to (X,Y,Q) with Q the MDC component id of X."""
    dec = mdc_decompose(bipartite_graph(p), p)
    k = max(dec.k, 1)
    mass3 = np.zeros(p.shape + (k,))
    for x in range(p.shape[0]):
        q = dec.component_of_x.get(x, 0)
        mass3[x, :, q] = p.mass[x, :]
    q_alpha = Alphabet(tuple(f"q{i}" for i in range(k)))
    return JointPMF((p.alphabets[0], p.alphabets[1], q_alpha), mass3, p.support_eps)


def is_perfectly_resolvable(p: JointPMF) -> bool:
    """True iff every MDC is a ZIC; cross-checked against C_GK = I(X;Y) and
    the direct conditions I(X;Y|Q) = 0, H(Q|X) = H(Q|Y) = 0."""
    dec = mdc_decompose(bipartite_graph(p), p)
    resolvable = all(is_zic(i, p) for i in range(dec.k))
    if resolvable:
        cgk = gk_common_information(p)
        mi = mutual_information(p)
        if abs(cgk - mi) > ZIC_TOL:
            raise RuntimeError(
                f"resolvability cross-check failed: C_GK={cgk} vs I={mi}")
        p3 = _joint_with_common_rv(p)
        i_xy_q = float(_kernels.cmi_bits(p3.mass))
        if abs(i_xy_q) > ZIC_TOL:
            raise RuntimeError(f"I(X;Y|Q)={i_xy_q} nonzero on resolvable pair")
    return resolvable


def residual_information(p: JointPMF) -> float:
    """I(X;Y) - C_GK(X;Y), cross-checked against I(X;Y|Q) with Q = common RV."""
    value = clamp_info(mutual_information(p) - gk_common_information(p),
                       "residual information")
    p3 = _joint_with_common_rv(p)
    direct = clamp_info(float(_kernels.cmi_bits(p3.mass)), "I(X;Y|Q)")
    if abs(value - direct) > ZIC_TOL:
        raise RuntimeError(
            f"residual information mismatch: {value} vs direct {direct}")
    return value


# ---------------------------------------------------------------------------
# Auxiliary-variable optimizations
# ---------------------------------------------------------------------------

def _digits_matrix(shape):
    prodd = int(np.prod(shape))
    digits = np.empty((prodd, len(shape)), dtype=np.int64)
    for f in range(prodd):
        rem = f
        for k in range(len(shape) - 1, -1, -1):
            digits[f, k] = rem % shape[k]
            rem //= shape[k]
    return digits


def _identity_candidate(p: JointPMF, q_card: int):
    """Deterministic Q = (X1..XK): exactly feasible, value H(X1..XK)."""
    flat = p.mass.ravel()
    support = np.where(flat > p.support_eps)[0]
    if len(support) > q_card:
        return None
    jq = np.zeros((q_card, flat.shape[0]))
    for qi, f in enumerate(support):
        jq[qi, f] = flat[f]
    return joint_entropy(p), jq


def wyner_common_information(p: JointPMF, q_card: int | None = None,
                             restarts: int = 32, seed: int = 0,
                             iters_per_stage: int = 200) -> OptReport:
    """Upper bound on C_W = inf I(X1..XK; Q) over Q rendering all variables
    conditionally independent, with the induced marginal matched to p."""
    if p.arity < 2:
        raise PMFValidationError("wyner_common_information needs arity >= 2")
    if q_card is None:
        q_card = int(np.prod(p.shape))
    if not 1 <= q_card <= int(np.prod(p.shape)):
        raise PMFValidationError(f"q_card {q_card} out of range")
    dims = np.array(p.shape, dtype=np.int64)
    digits = _digits_matrix(p.shape)
    target = p.mass.ravel().copy()
    value, dev, jq = _kernels.wyner_descent(
        target, dims, digits, q_card, seed, restarts, iters_per_stage,
        1e-5, 1e-9)
    candidates = []
    if dev <= FEAS_TOL:
        candidates.append((float(value), float(dev), jq))
    ident = _identity_candidate(p, q_card)
    if ident is not None:
        candidates.append((ident[0], 0.0, ident[1]))
    if not candidates:
        converged = False
        best_value, best_dev, best_jq = float(value), float(dev), jq
    else:
        converged = True
        best_value, best_dev, best_jq = min(candidates, key=lambda c: c[0])
    q_alpha = Alphabet(tuple(f"q{i}" for i in range(q_card)))
    ach_mass = np.moveaxis(best_jq.reshape((q_card,) + p.shape), 0, -1)
    total = ach_mass.sum()
    achiever = JointPMF(p.alphabets + (q_alpha,), ach_mass / total, p.support_eps)
    return OptReport(value=float(best_value), achiever=achiever,
                     restarts_run=restarts, converged=converged, seed=seed,
                     bound_kind="upper",
                     diagnostics={"marginal_deviation": float(best_dev)})


def min_assisted_common_information(p: JointPMF, q_card: int | None = None,
                                    restarts: int = 32, seed: int = 0,
                                    max_iters: int = 400) -> OptReport:
    """Upper bound on C_min = inf_Q I(Y;Q|X) + I(X;Q|Y) + I(X;Y|Q), optimized
    over conditional laws p(q|x,y) (exactly feasible by construction)."""
    if p.arity != 2:
        raise PMFValidationError("min_assisted_common_information needs arity 2")
    if q_card is None:
        q_card = int(np.prod(p.shape))
    value, rows = _kernels.cmin_descent(p.mass, q_card, seed, restarts,
                                        max_iters, 1e-5, 1e-9)
    value = clamp_info(float(value), "C_min")
    nx, ny = p.shape
    mass3 = p.mass[:, :, None] * rows.reshape(nx, ny, q_card)
    q_alpha = Alphabet(tuple(f"q{i}" for i in range(q_card)))
    achiever = JointPMF(p.alphabets + (q_alpha,), mass3 / mass3.sum(),
                        p.support_eps)
    return OptReport(value=value, achiever=achiever, restarts_run=restarts,
                     converged=True, seed=seed, bound_kind="upper")


def check_ci_ordering(p: JointPMF, restarts: int = 2, seed: int = 0,
                      iters_per_stage: int = 60,
                      q_card: int | None = None) -> dict:
    """Verify C_GK <= I <= C_W (numeric upper bound) and, for three
    variables, the K-argument monotonicity relations.

    Any feasible auxiliary variable yields a valid Wyner upper bound, so a
    small restart budget (and optionally a reduced q_card) keeps this cheap
    without weakening the check.
    """
    if p.arity == 2:
        cgk = gk_common_information(p)
        mi = mutual_information(p)
        rep = wyner_common_information(p, q_card=q_card, restarts=restarts,
                                       seed=seed,
                                       iters_per_stage=iters_per_stage)
        ok = (cgk <= mi + 1e-9) and (mi <= rep.value + FEAS_TOL)
        return {"c_gk": cgk, "mi": mi, "wyner_upper": rep.value,
                "ordering_ok": bool(ok), "wyner_report": rep}
    if p.arity == 3:
        cgk3 = gk_common_information_k(p)
        pair_gk = {}
        pair_mi = {}
        for i, j in ((0, 1), (0, 2), (1, 2)):
            pij = marginalize(p, [i, j])
            pair_gk[(i, j)] = gk_common_information(pij)
            pair_mi[(i, j)] = mutual_information(pij)
        ok = all(cgk3 <= g + 1e-9 for g in pair_gk.values())
        ok = ok and cgk3 <= min(pair_mi.values()) + 1e-9
        return {"c_gk_k": cgk3, "pairwise_c_gk": pair_gk,
                "pairwise_mi": pair_mi, "ordering_ok": bool(ok)}
    raise PMFValidationError("check_ci_ordering expects arity 2 or 3")
