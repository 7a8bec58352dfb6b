"""Graph core: construction, graph6 codec, metrics, paths."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pursuit.graphs import (
    UNREACHABLE,
    Graph,
    Path,
    ball,
    distance_matrix,
    domination_number,
    from_edge_list,
    from_graph6,
    is_isometric_subgraph,
    mask_of,
    shortest_path,
    to_edge_list,
    to_graph6,
)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


class TestConstruction:
    def test_loop_rejected(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])

    def test_duplicate_edges_collapse(self):
        g = Graph(3, [(0, 1), (1, 0), (0, 1)])
        assert g.m == 1
        assert g.has_edge(0, 1) and g.has_edge(1, 0)

    def test_degree_and_neighbors(self):
        g = Graph(4, [(0, 1), (0, 2), (0, 3)])
        assert g.degree(0) == 3
        assert g.neighbors(0) == (1, 2, 3)
        assert g.neighbors(1) == (0,)

    def test_edges_sorted_upper(self):
        g = Graph(4, [(3, 1), (2, 0)])
        assert g.edges() == [(0, 2), (1, 3)]

    def test_empty_graph(self):
        g = Graph(0)
        assert g.n == 0 and g.m == 0
        assert g.is_connected()


class TestGraph6:
    # Hand-decoded vectors. "A_": n=2, bit x_01=1 -> K2.
    # "A?": n=2, no bits -> two isolated vertices. "Bw": n=3, all bits -> K3.
    def test_k2(self):
        g = from_graph6("A_")
        assert g.n == 2 and g.edges() == [(0, 1)]

    def test_two_isolated(self):
        g = from_graph6("A?")
        assert g.n == 2 and g.m == 0

    def test_k3(self):
        g = from_graph6("Bw")
        assert g.n == 3 and g.m == 3

    def test_header_accepted(self):
        assert from_graph6(">>graph6<<A_").m == 1

    def test_encode_k2(self):
        assert to_graph6(Graph(2, [(0, 1)])) == "A_"

    def test_encode_k3(self):
        assert to_graph6(Graph(3, [(0, 1), (0, 2), (1, 2)])) == "Bw"

    def test_single_vertex(self):
        assert to_graph6(Graph(1)) == "@"
        assert from_graph6("@").n == 1

    def test_bad_length(self):
        with pytest.raises(ValueError):
            from_graph6("A")

    def test_bad_character(self):
        with pytest.raises(ValueError):
            from_graph6("B" + chr(30))

    def test_large_n_header(self):
        # n=100 needs the '~' 18-bit form.
        g = path_graph(100)
        s = to_graph6(g)
        assert s[0] == "~"
        h = from_graph6(s)
        assert h.n == 100 and h.edges() == g.edges()

    @given(st.integers(0, 12), st.randoms(use_true_random=False))
    @settings(max_examples=60, deadline=None)
    def test_roundtrip(self, n, rng):
        g = random_graph(rng, n, 0.4)
        assert from_graph6(to_graph6(g)) == g


class TestEdgeListIO:
    def test_roundtrip(self):
        g = cycle_graph(5)
        assert from_edge_list(to_edge_list(g)) == g

    def test_comments_and_blanks(self):
        text = "# a cycle\n4\n\n0 1\n1 2\n# middle\n2 3\n3 0\n"
        assert from_edge_list(text) == cycle_graph(4)

    def test_implicit_n(self):
        g = from_edge_list("0 1\n1 4\n")
        assert g.n == 5 and g.m == 2

    def test_duplicate_count_line(self):
        with pytest.raises(ValueError):
            from_edge_list("3\n4\n0 1\n")


class TestMetrics:
    def test_path_distances(self):
        g = path_graph(5)
        assert g.bfs_levels(0) == [0, 1, 2, 3, 4]

    def test_unreachable_sentinel(self):
        g = Graph(3, [(0, 1)])
        d = g.distances_from(0)
        assert d == [0, 1, UNREACHABLE]
        assert math.isinf(d[2])

    def test_within_mask(self):
        # Removing the middle of a cycle forces the long way around.
        g = cycle_graph(6)
        allowed = mask_of([0, 1, 2, 3, 4])
        assert g.bfs_levels(0, allowed)[3] == 3

    def test_components(self):
        g = Graph(5, [(0, 1), (2, 3)])
        comps = sorted(g.components())
        assert comps == [mask_of([0, 1]), mask_of([2, 3]), mask_of([4])]

    def test_component_of_within(self):
        g = cycle_graph(6)
        comp = g.component_of(0, mask_of([0, 1, 2]))
        assert comp == mask_of([0, 1, 2])

    def test_distance_matrix_metric_axioms(self):
        rng = random.Random(7)
        for _ in range(25):
            g = random_graph(rng, rng.randint(1, 10), 0.35)
            dm = distance_matrix(g)
            for u in range(g.n):
                assert dm[u, u] == 0
                for v in range(g.n):
                    assert dm[u, v] == dm[v, u]
                    assert (dm[u, v] == 1) == g.has_edge(u, v)
                    for w in range(g.n):
                        assert dm[u, w] <= dm[u, v] + dm[v, w]

    def test_ball(self):
        g = path_graph(7)
        assert ball(g, 3, 0) == {3}
        assert ball(g, 3, 2) == {1, 2, 3, 4, 5}
        assert ball(g, 0, 100) == set(range(7))


class TestIsometry:
    def test_path_in_cycle(self):
        # In C6 an arc of 4 vertices spans distance 3 > floor(6/2)? No:
        # d(0,3)=3 both along the arc and in the cycle, so it is isometric.
        g = cycle_graph(6)
        assert is_isometric_subgraph(g, [0, 1, 2, 3])
        # Five consecutive vertices are not: d(0,4)=2 in C6 but 4 on the arc.
        assert not is_isometric_subgraph(g, [0, 1, 2, 3, 4])

    def test_disconnected_subgraph_not_isometric(self):
        g = path_graph(5)
        assert not is_isometric_subgraph(g, [0, 4])

    def test_path_object_isometric(self):
        g = cycle_graph(6)
        assert Path((0, 1, 2, 3)).is_isometric_in(g)
        assert not Path((0, 1, 2, 3, 4)).is_isometric_in(g)

    def test_path_isometric_within_host(self):
        # Inside the host that omits vertex 5, the long arc becomes isometric.
        g = cycle_graph(6)
        host = mask_of([0, 1, 2, 3, 4])
        assert Path((0, 1, 2, 3, 4)).is_isometric_in(g, host)

    def test_path_validation(self):
        with pytest.raises(ValueError):
            Path(())
        with pytest.raises(ValueError):
            Path((0, 1, 0))
        assert not Path((0, 2)).is_path_in(path_graph(3))


class TestShortestPath:
    def test_simple(self):
        g = cycle_graph(6)
        p = shortest_path(g, 0, 3)
        assert p is not None and p.length == 3

    def test_lex_least(self):
        # Two shortest routes 0-1-3 and 0-2-3; lex-least picks vertex 1.
        g = Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
        p = shortest_path(g, 0, 3)
        assert p is not None and p.vertices == (0, 1, 3)

    def test_none_when_disconnected(self):
        g = Graph(4, [(0, 1), (2, 3)])
        assert shortest_path(g, 0, 3) is None

    def test_within(self):
        g = cycle_graph(6)
        p = shortest_path(g, 0, 3, mask_of([0, 1, 2, 3]))
        assert p is not None and p.vertices == (0, 1, 2, 3)

    def test_shortest_is_isometric(self):
        rng = random.Random(11)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 10), 0.3)
            u, v = rng.sample(range(g.n), 2)
            p = shortest_path(g, u, v)
            if p is not None:
                assert p.is_isometric_in(g)


class TestDomination:
    def test_values(self):
        assert domination_number(path_graph(1)) == 1
        assert domination_number(path_graph(3)) == 1
        assert domination_number(path_graph(4)) == 2
        assert domination_number(path_graph(7)) == 3
        assert domination_number(cycle_graph(6)) == 2
        assert domination_number(Graph(4, [(0, 1), (0, 2), (0, 3)])) == 1

    def test_limit_guard(self):
        with pytest.raises(ValueError):
            domination_number(path_graph(30))
