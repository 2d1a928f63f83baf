import itertools

import numpy as np
import pytest

from infodecomp.battery import (hexner_yo_partitions, make_typewriter_pair,
                                typewriter_partitions)
from infodecomp.core_prob import JointPMF, PMFValidationError
from infodecomp.info_lattice import (Partition, SampleSpace, equivalent, join,
                                     meet, pmf_to_partitions)
from infodecomp.zero_error import (characteristic_graph, chromatic_color,
                                   chromatic_number, greedy_color,
                                   hexner_yo_private, is_proper,
                                   witsenhausen_private)


def brute_force_chromatic(adj):
    """Reference chromatic number by trying every assignment (<= 8 vertices)."""
    n = len(adj)
    for k in range(1, n + 1):
        for colors in itertools.product(range(k), repeat=n):
            if len(set(colors)) != k:
                continue
            if all(colors[a] != colors[b] for a in range(n) for b in adj[a]):
                return k
    return n


def graph_from_pmf(mass):
    return characteristic_graph(JointPMF.from_array(mass))


class TestCharacteristicGraph:
    def test_confusable_pairs(self):
        mass = np.array([[0.25, 0.0], [0.25, 0.25], [0.0, 0.25]])
        g = graph_from_pmf(mass)
        # x0,x1 share y0; x1,x2 share y1; x0,x2 share nothing
        assert g.edge_labels() == [("0", "1"), ("1", "2")]

    def test_no_edges_when_y_separates(self):
        g = graph_from_pmf(np.eye(3) / 3.0)
        assert not g.edges
        assert chromatic_number(g) == 1


class TestChromatic:
    def test_matches_brute_force_random_graphs(self):
        rng = np.random.default_rng(2)
        for trial in range(20):
            n = int(rng.integers(3, 8))
            mass = (rng.random((n, n)) < 0.4).astype(float)
            mass[0, 0] = 1.0  # keep non-empty
            mass /= mass.sum()
            g = graph_from_pmf(mass)
            adj = g.neighbors()
            assert chromatic_number(g) == brute_force_chromatic(adj)

    def test_odd_cycle_needs_three(self):
        # C5: each y supports one adjacent pair
        mass = np.zeros((5, 5))
        for i in range(5):
            mass[i, i] = 0.1
            mass[(i + 1) % 5, i] = 0.1
        g = graph_from_pmf(mass)
        assert chromatic_number(g) == 3

    def test_coloring_is_proper_and_canonical(self):
        mass = np.zeros((5, 5))
        for i in range(5):
            mass[i, i] = 0.1
            mass[(i + 1) % 5, i] = 0.1
        g = graph_from_pmf(mass)
        col = chromatic_color(g)
        assert is_proper(g, col.color_of)
        assert col.color_of[0] == 0  # first-use canonical form

    def test_greedy_upper_bound(self):
        rng = np.random.default_rng(5)
        mass = (rng.random((10, 10)) < 0.3).astype(float)
        mass[0, 0] = 1.0
        mass /= mass.sum()
        g = graph_from_pmf(mass)
        greedy = greedy_color(g)
        assert is_proper(g, greedy.color_of)
        assert greedy.num_colors >= chromatic_number(g)


class TestWitsenhausen:
    def test_typewriter_chromatic_three(self):
        p = make_typewriter_pair().pmf
        res = witsenhausen_private(p)
        assert res["num_colors"] == 3
        assert len(res["all_minimal"]) >= 2

    def test_three_class_coloring_is_among_minimal(self):
        # color classes {01,67,ab}, {23,89,ef}, {45,cd} of the X blocks
        p = make_typewriter_pair().pmf
        res = witsenhausen_private(p)
        want = {frozenset({"01", "67", "ab"}), frozenset({"23", "89", "ef"}),
                frozenset({"45", "cd"})}
        found = False
        for part in res["all_minimal"]:
            got = {frozenset(b) for b in part.blocks()}
            if got == want:
                found = True
        assert found

    def test_join_identity_on_all_minimal(self):
        p = make_typewriter_pair().pmf
        res = witsenhausen_private(p)
        space, (px, py) = pmf_to_partitions(p)
        cells = p.support()
        target = join(px, py)
        vertex_index = {lab: i for i, lab in enumerate(p.alphabets[0].labels)}
        for part in res["all_minimal"]:
            lift = Partition(space, tuple(
                part.block_of[cells[i][0]] for i in range(len(cells))))
            assert equivalent(join(lift, py), target)

    def test_exact_cap_enforced(self):
        mass = np.full((30, 2), 1.0 / 60.0)
        with pytest.raises(PMFValidationError):
            chromatic_number(characteristic_graph(JointPMF.from_array(mass)))


class TestHexnerYo:
    def test_six_point_example_solutions(self):
        space, x, y = hexner_yo_partitions()
        sols = hexner_yo_private(x, y)
        notations = {s.notation() for s in sols}
        assert notations == {"03|1245", "045|123"}

    def test_solutions_satisfy_both_identities(self):
        space, x, y = hexner_yo_partitions()
        common = meet(x, y)
        target = join(x, y)
        for s in hexner_yo_private(x, y):
            assert join(s, common).block_of == x.block_of
            assert join(s, y).block_of == target.block_of

    def test_solution_entropy_below_conditional_bound(self):
        # both private partitions use 2 blocks: 1 bit <= H(X) = 2 bits
        space, x, y = hexner_yo_partitions()
        for s in hexner_yo_private(x, y):
            assert s.num_blocks == 2

    def test_trivial_when_x_poorer_than_meet(self):
        space = SampleSpace(tuple("0123"))
        x = Partition.from_notation(space, "01|23")
        sols = hexner_yo_private(x, x)
        # meet(x, x) = x, so the one-block partition suffices
        assert sols[0].num_blocks == 1

    def test_enumeration_cap(self):
        space = SampleSpace(tuple("0123456789ab"))
        x = Partition(space, tuple(range(12)))
        from infodecomp.info_lattice import LatticeError
        with pytest.raises(LatticeError):
            hexner_yo_private(x, x)


def test_typewriter_meet_notation():
    space, x, y = typewriter_partitions()
    m = meet(x, y)
    assert m.notation() == "0123456789|abcdef"
