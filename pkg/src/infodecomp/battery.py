"""Canonical distributions: worked examples plus parameterized families.

Each NamedDistribution carries tagged expected values; the golden suite
(`run_expectations`) recomputes every expectation and reports a pass/fail
table.  Constructors regenerate the shipped corpus files bit-exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .core_prob import (Alphabet, JointPMF, dump_pmf, format_pmf, load_pmf,
                        marginalize, mutual_information, entropy)
from . import core_prob, common_info, info_lattice, pid, secrecy_opt, zero_error

CORPUS_VERSION = "v1"


@dataclass(frozen=True)
class Expectation:
    measure: str
    arg: str | None
    value: float
    tol: float
    tag: str  # PAPER / TRIVIAL / DERIVED


@dataclass(frozen=True)
class NamedDistribution:
    name: str
    pmf: JointPMF
    provenance: str  # "paper-figure" or "constructed"
    expected: tuple = ()
    extras: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def make_xor() -> NamedDistribution:
    """Y = XOR(X1, X2) with independent uniform input bits."""
    mass = np.zeros((2, 2, 2))
    for a in range(2):
        for b in range(2):
            mass[a, b, a ^ b] = 0.25
    pmf = JointPMF.from_array(mass)
    exp = (
        Expectation("mi", "0,1", 0.0, 1e-9, "PAPER"),
        Expectation("mi", "0,2", 0.0, 1e-9, "PAPER"),
        Expectation("mi", "1,2", 0.0, 1e-9, "PAPER"),
        Expectation("mi_joint", None, 1.0, 1e-9, "PAPER"),
        Expectation("cmi", "0,1|2", 1.0, 1e-9, "PAPER"),
        Expectation("entropy_axis", "2", 1.0, 1e-9, "PAPER"),
        Expectation("intrinsic", None, 0.0, 1e-3, "PAPER"),
        Expectation("synergy_intrinsic", None, 1.0, 1e-3, "PAPER"),
        Expectation("synergy_union", None, 1.0, 1e-3, "PAPER"),
    )
    return NamedDistribution("xor", pmf, "paper-figure", exp)


def make_figure2(delta: float) -> NamedDistribution:
    """Two complete 2x2 blocks of mass (1-delta)/8 per cell, linked by
    cross-block cells of mass delta/8 each.

    At delta = 0 the pair decomposes as X = (U,Q), Y = (Q,V) with U, V, Q
    independent uniform bits; any delta > 0 merges the two components.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must lie in [0, 1]")
    mass = np.zeros((4, 4))
    for blk in (0, 1):
        for i in range(2):
            for j in range(2):
                mass[2 * blk + i, 2 * blk + j] = (1.0 - delta) / 8.0
                mass[2 * blk + i, 2 * (1 - blk) + j] = delta / 8.0
    pmf = JointPMF.from_array(mass, labels=[
        ("x0", "x1", "x2", "x3"), ("y0", "y1", "y2", "y3")])
    if delta == 0.0:
        exp = (Expectation("gk", None, 1.0, 1e-9, "PAPER"),
               Expectation("mdc_k", None, 2.0, 0.0, "PAPER"))
    else:
        exp = (Expectation("gk", None, 0.0, 1e-9, "PAPER"),
               Expectation("mdc_k", None, 1.0, 0.0, "PAPER"))
    return NamedDistribution(f"figure2_delta{delta:g}", pmf, "paper-figure", exp)


def make_copy_both() -> NamedDistribution:
    """Y = (X1, X2) with independent uniform input bits."""
    y_alpha = Alphabet(("00", "01", "10", "11"))
    mass = np.zeros((2, 2, 4))
    for a in range(2):
        for b in range(2):
            mass[a, b, 2 * a + b] = 0.25
    pmf = JointPMF.from_array(mass, labels=[("0", "1"), ("0", "1"),
                                            y_alpha.labels])
    exp = (
        Expectation("mi", "0,1", 0.0, 1e-9, "PAPER"),
        Expectation("mi", "0,2", 1.0, 1e-9, "DERIVED"),
        Expectation("mi", "1,2", 1.0, 1e-9, "DERIVED"),
        Expectation("condgk", "1", 1.0, 2e-3, "PAPER"),
        Expectation("condgk", "2", 1.0, 2e-3, "PAPER"),
    )
    return NamedDistribution("copy_both", pmf, "paper-figure", exp)


_TYPEWRITER_X = "01|23|45|67|89|ab|cd|ef"
_TYPEWRITER_Y = "02|34|56|78|19|ac|de|bf"


def typewriter_partitions():
    """The 16-point two-typewriter example as sample-space partitions."""
    space = info_lattice.SampleSpace(tuple("0123456789abcdef"),
                                     np.full(16, 1.0 / 16.0))
    x = info_lattice.Partition.from_notation(space, _TYPEWRITER_X)
    y = info_lattice.Partition.from_notation(space, _TYPEWRITER_Y)
    return space, x, y


def make_typewriter_pair() -> NamedDistribution:
    """Joint pmf of the block labels of the two typewriter partitions,
    uniform over the 16 underlying points."""
    space, x, y = typewriter_partitions()
    bx = x.blocks()
    by = y.blocks()
    mass = np.zeros((len(bx), len(by)))
    for i, pt in enumerate(space.points):
        mass[x.block_of[i], y.block_of[i]] += 1.0 / 16.0
    labels = [tuple("".join(b) for b in bx), tuple("".join(b) for b in by)]
    pmf = JointPMF.from_array(mass, labels=labels)
    exp = (
        Expectation("meet_notation", "0123456789|abcdef", 1.0, 0.0, "PAPER"),
        Expectation("witsenhausen_chi", None, 3.0, 0.0, "PAPER"),
        Expectation("witsenhausen_nonunique", None, 1.0, 0.0, "PAPER"),
    )
    return NamedDistribution("typewriter_pair", pmf, "paper-figure", exp,
                             extras={"space": space, "x": x, "y": y})


_HY_X = "0|12|3|45"
_HY_Y = "01|2|34|5"


def hexner_yo_partitions():
    space = info_lattice.SampleSpace(tuple("012345"), np.full(6, 1.0 / 6.0))
    x = info_lattice.Partition.from_notation(space, _HY_X)
    y = info_lattice.Partition.from_notation(space, _HY_Y)
    return space, x, y


def make_hexner_yo() -> NamedDistribution:
    """Block-label joint of the 6-point private-information example."""
    space, x, y = hexner_yo_partitions()
    mass = np.zeros((x.num_blocks, y.num_blocks))
    for i in range(6):
        mass[x.block_of[i], y.block_of[i]] += 1.0 / 6.0
    labels = [tuple("".join(b) for b in x.blocks()),
              tuple("".join(b) for b in y.blocks())]
    pmf = JointPMF.from_array(mass, labels=labels)
    exp = (
        Expectation("meet_notation", "012|345", 1.0, 0.0, "PAPER"),
        Expectation("hexner_yo_contains", "03|1245", 1.0, 0.0, "PAPER"),
        Expectation("hexner_yo_contains", "045|123", 1.0, 0.0, "PAPER"),
    )
    return NamedDistribution("hexner_yo", pmf, "paper-figure", exp,
                             extras={"space": space, "x": x, "y": y})


def make_bsc(crossover: float) -> NamedDistribution:
    """Uniform input bit through a binary symmetric channel."""
    e = crossover
    mass = np.array([[0.5 * (1 - e), 0.5 * e], [0.5 * e, 0.5 * (1 - e)]])
    pmf = JointPMF.from_array(mass)
    exp = (
        Expectation("mdc_k", None, 1.0, 0.0, "PAPER"),
        Expectation("gk", None, 0.0, 1e-12, "PAPER"),
    )
    return NamedDistribution(f"bsc{crossover:g}", pmf, "paper-figure", exp)


def make_decomposable(u_card: int = 2, v_card: int = 2,
                      q_card: int = 2) -> NamedDistribution:
    """X = (U,Q), Y = (V,Q) with U, V, Q independent and uniform."""
    x_labels = tuple(f"u{u}q{q}" for u in range(u_card) for q in range(q_card))
    y_labels = tuple(f"v{v}q{q}" for v in range(v_card) for q in range(q_card))
    mass = np.zeros((len(x_labels), len(y_labels)))
    for u in range(u_card):
        for q in range(q_card):
            for v in range(v_card):
                mass[u * q_card + q, v * q_card + q] = 1.0 / (u_card * v_card * q_card)
    pmf = JointPMF.from_array(mass, labels=[x_labels, y_labels])
    hq = float(np.log2(q_card))
    exp = (
        Expectation("gk", None, hq, 1e-9, "PAPER"),
        Expectation("resolvable", None, 1.0, 0.0, "PAPER"),
    )
    return NamedDistribution(f"decomposable_{u_card}x{v_card}x{q_card}", pmf,
                             "paper-figure", exp)


def make_and_gate() -> NamedDistribution:
    """Y = AND(X1, X2) with independent uniform input bits."""
    mass = np.zeros((2, 2, 2))
    for a in range(2):
        for b in range(2):
            mass[a, b, a & b] = 0.25
    return NamedDistribution("and_gate", JointPMF.from_array(mass),
                             "constructed")


def make_random(seed: int, shape) -> NamedDistribution:
    """Dirichlet(1,..,1)-sampled dense pmf of the given shape."""
    rng = np.random.default_rng(seed)
    mass = rng.dirichlet(np.ones(int(np.prod(shape)))).reshape(shape)
    return NamedDistribution(f"random_s{seed}_" + "x".join(map(str, shape)),
                             JointPMF.from_array(mass), "constructed")


def make_cond_independent(p_y, channel1, channel2) -> NamedDistribution:
    """p(x1,x2,y) = p(y) ch1(y,x1) ch2(y,x2): target-conditioned independence."""
    p_y = np.asarray(p_y, dtype=np.float64)
    ch1 = np.asarray(channel1, dtype=np.float64)
    ch2 = np.asarray(channel2, dtype=np.float64)
    mass = np.einsum("y,ya,yb->aby", p_y, ch1, ch2)
    return NamedDistribution("cond_independent", JointPMF.from_array(mass),
                             "constructed")


# Frozen witness where intrinsic-information-as-unique violates the
# consistency condition (found by pid.find_consistency_witness; regenerable).
_WITNESS_SEED = 0


def make_consistency_witness() -> NamedDistribution:
    found = pid.find_consistency_witness(seed=_WITNESS_SEED, max_tries=200)
    if found is None:  # pragma: no cover
        raise RuntimeError("consistency witness search failed")
    pmf, residual = found
    return NamedDistribution("consistency_witness", pmf, "constructed",
                             extras={"residual": residual})


# ---------------------------------------------------------------------------
# Expectation evaluation
# ---------------------------------------------------------------------------

def evaluate_expectation(nd: NamedDistribution, exp: Expectation,
                         seed: int = 0) -> float:
    p = nd.pmf
    m, arg = exp.measure, exp.arg
    if m == "entropy_axis":
        return entropy(marginalize(p, [int(arg)]))
    if m == "mi":
        i, j = (int(s) for s in arg.split(","))
        return mutual_information(marginalize(p, [i, j]))
    if m == "mi_joint":
        n1, n2, ny = p.shape
        return mutual_information(JointPMF.from_array(p.mass.reshape(n1 * n2, ny)))
    if m == "cmi":
        return core_prob.conditional_mutual_information(p)
    if m == "gk":
        return common_info.gk_common_information(p)
    if m == "mdc_k":
        return float(common_info.mdc_decompose(common_info.bipartite_graph(p), p).k)
    if m == "resolvable":
        return float(common_info.is_perfectly_resolvable(p))
    if m == "intrinsic":
        return secrecy_opt.intrinsic_information(p, seed=seed).value
    if m == "synergy_intrinsic":
        return secrecy_opt.synergy_gk(p, seed=seed)["via_intrinsic"]
    if m == "synergy_union":
        return secrecy_opt.synergy_gk(p, seed=seed)["via_union"]
    if m == "condgk":
        return pid.unique_from_conditional_gk(p, int(arg), seed=seed)
    if m == "meet_notation":
        space, parts = info_lattice.pmf_to_partitions(p)
        got = info_lattice.meet(parts[0], parts[1])
        want = _partition_from_point_blocks(p, space, arg)
        return float(info_lattice.equivalent(got, want))
    if m == "witsenhausen_chi":
        return float(zero_error.witsenhausen_private(p)["num_colors"])
    if m == "witsenhausen_nonunique":
        return float(len(zero_error.witsenhausen_private(p)["all_minimal"]) >= 2)
    if m == "hexner_yo_contains":
        space, x, y = nd.extras["space"], nd.extras["x"], nd.extras["y"]
        sols = zero_error.hexner_yo_private(x, y)
        want = info_lattice.Partition.from_notation(space, arg)
        return float(any(s.block_of == want.block_of for s in sols))
    raise ValueError(f"unknown measure {m!r}")


def _partition_from_point_blocks(p: JointPMF, space, notation: str):
    """Interpret point-level block notation over the support-cell space of a
    block-label pmf.  Each support cell is the intersection of an X block and
    a Y block of the underlying points; the cell inherits the block of that
    intersection."""
    blocks = [set(chunk) for chunk in notation.split("|")]

    def cell_block(cell_label):
        xlab, ylab = cell_label.split(",")
        pts = set(xlab) & set(ylab)
        hits = {b for b, blk in enumerate(blocks) if pts & blk}
        if len(hits) != 1:
            raise ValueError(
                f"cell {cell_label!r} does not sit in one block of {notation!r}")
        return hits.pop()

    assign = tuple(cell_block(lab) for lab in space.points)
    return info_lattice.Partition(space, assign)


def run_expectations(dists=None, tags=("PAPER",), seed: int = 0) -> list[dict]:
    """Recompute tagged expectations; one row per expectation."""
    if dists is None:
        dists = corpus_distributions()
    rows = []
    for nd in dists:
        for exp in nd.expected:
            if exp.tag not in tags:
                continue
            got = evaluate_expectation(nd, exp, seed=seed)
            ok = abs(got - exp.value) <= exp.tol
            rows.append({"distribution": nd.name, "measure": exp.measure,
                         "arg": exp.arg, "expected": exp.value, "got": got,
                         "tol": exp.tol, "tag": exp.tag, "ok": bool(ok)})
    return rows


# ---------------------------------------------------------------------------
# Corpus files
# ---------------------------------------------------------------------------

def corpus_distributions() -> list[NamedDistribution]:
    return [
        make_xor(),
        make_figure2(0.0),
        make_figure2(0.01),
        make_figure2(0.1),
        make_copy_both(),
        make_typewriter_pair(),
        make_hexner_yo(),
        make_bsc(0.1),
        make_decomposable(2, 2, 2),
        make_and_gate(),
    ]


def corpus_dir():
    override = os.environ.get("INFODECOMP_CORPUS")
    if override:
        return override
    return str(resources.files("infodecomp").joinpath("corpus", CORPUS_VERSION))


def write_corpus(directory=None) -> list[str]:
    directory = directory or corpus_dir()
    os.makedirs(directory, exist_ok=True)
    written = []
    for nd in corpus_distributions() + [make_consistency_witness()]:
        path = os.path.join(directory, f"{nd.name}.pmf")
        dump_pmf(nd.pmf, path)
        written.append(path)
    space, x, y = hexner_yo_partitions()
    path = os.path.join(directory, "hexner_yo.part")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("".join(space.points) + "\n")
        fh.write(x.notation() + "\n")
        fh.write(y.notation() + "\n")
    written.append(path)
    return written


def verify_corpus(directory=None) -> list[dict]:
    """Check shipped files match the constructors bit-exactly."""
    directory = directory or corpus_dir()
    rows = []
    for nd in corpus_distributions():
        path = os.path.join(directory, f"{nd.name}.pmf")
        if not os.path.exists(path):
            rows.append({"name": nd.name, "ok": False, "reason": "missing"})
            continue
        with open(path, encoding="utf-8") as fh:
            ok = fh.read() == format_pmf(nd.pmf)
        rows.append({"name": nd.name, "ok": ok,
                     "reason": "" if ok else "content drift"})
    return rows


def corpus_pmf(name: str) -> JointPMF:
    return load_pmf(os.path.join(corpus_dir(), f"{name}.pmf"))
