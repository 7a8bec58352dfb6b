"""Generators, the exhaustive corpus, and witness constructions."""

import random

import pytest

from pursuit.constructions import (
    build_guard_adversary,
    build_hole_gadget,
    build_hts,
    complete,
    connected_graphs,
    cycle,
    grid,
    is_isomorphic,
    path,
    petersen,
    random_connected,
    random_planar_triangulation,
)
from pursuit.graphs import Graph, is_dominating, is_isometric_subgraph
from pursuit.helly import Hole, find_hole, is_helly


class TestGenerators:
    def test_grid(self):
        g = grid(3, 3)
        assert g.n == 9 and g.m == 12
        assert g.has_edge(0, 1) and g.has_edge(0, 3) and not g.has_edge(0, 4)

    def test_path_cycle_complete(self):
        assert path(5).m == 4
        assert cycle(4).edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]
        assert complete(5).m == 10

    def test_petersen(self):
        g = petersen()
        assert g.n == 10 and g.m == 15
        assert all(g.degree(v) == 3 for v in range(10))

    def test_bounds(self):
        with pytest.raises(ValueError):
            cycle(2)
        with pytest.raises(ValueError):
            grid(0, 3)
        with pytest.raises(ValueError):
            random_planar_triangulation(2, 1)

    def test_random_connected_deterministic(self):
        a = random_connected(9, 0.3, seed=41)
        b = random_connected(9, 0.3, seed=41)
        assert a == b
        assert a.is_connected()
        assert a != random_connected(9, 0.3, seed=42)

    def test_triangulation_counts(self):
        for n, seed in [(3, 0), (4, 1), (8, 2), (20, 3), (50, 4)]:
            g = random_planar_triangulation(n, seed)
            assert g.n == n and g.m == 3 * n - 6
            assert g.is_connected()
        assert random_planar_triangulation(20, 3) == random_planar_triangulation(20, 3)


class TestCorpus:
    def test_connected_counts(self):
        expected = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
        for n, count in expected.items():
            assert len(connected_graphs(n)) == count

    def test_all_connected(self):
        for g in connected_graphs(5):
            assert g.is_connected()

    def test_pairwise_distinct(self):
        reps = connected_graphs(4)
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                assert not is_isomorphic(reps[i], reps[j])

    def test_isomorphism_spot_checks(self):
        assert is_isomorphic(cycle(5), Graph(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]))
        assert not is_isomorphic(path(4), Graph(4, [(0, 1), (0, 2), (0, 3)]))


class TestHts:
    def test_sizes(self):
        for (t, s), size in [((3, 1), 6), ((3, 2), 9), ((5, 3), 35)]:
            g, desc = build_hts(t, s)
            assert g.n == size
            assert len(desc.subsets) == len(desc.privates)
            assert all(len(p) == s for p in desc.privates)

    def test_parameter_bounds(self):
        with pytest.raises(ValueError):
            build_hts(4, 1)
        with pytest.raises(ValueError):
            build_hts(3, 0)

    def test_domination_characterization(self):
        # A set dominates H(t,s) exactly when it meets every clique K_X.
        for t, s in [(3, 1), (3, 2)]:
            g, desc = build_hts(t, s)
            cliques = [
                set(x) | set(p) for x, p in zip(desc.subsets, desc.privates)
            ]
            for mask in range(1 << g.n):
                a = {v for v in range(g.n) if mask >> v & 1}
                expected = all(a & kx for kx in cliques)
                assert is_dominating(g, a) == expected


class TestAdversary:
    def test_explicit_gadget(self):
        h, desc = build_hts(3, 2)
        gadget = build_guard_adversary(h, desc, k=1)
        assert gadget.explicit
        assert gadget.graph.n == 9 + 8
        assert len(gadget.transversals) == 8
        for idx, chosen in enumerate(gadget.transversals):
            apex = gadget.apex_base + idx
            assert set(gadget.graph.neighbors(apex)) == set(chosen)

    def test_certificate_against_every_single_cop(self):
        h, desc = build_hts(3, 2)
        gadget = build_guard_adversary(h, desc, k=1)
        cert = gadget.certificate
        for cop in range(h.n):
            i = cert.cop_free_subset((cop,))
            kx = set(desc.subsets[i]) | set(desc.privates[i])
            assert cop not in kx
            s = cert.escape_transversal((cop,))
            assert cop not in s
            assert len(s) == len(desc.subsets)

    def test_certificate_mode_for_large_family(self):
        h, desc = build_hts(5, 3)
        gadget = build_guard_adversary(h, desc, k=2)
        assert not gadget.explicit and gadget.graph is None
        rng = random.Random(99)
        for _ in range(200):
            cops = tuple(rng.sample(range(h.n), 2))
            i = gadget.certificate.cop_free_subset(cops)
            kx = set(desc.subsets[i]) | set(desc.privates[i])
            assert not kx & set(cops)
            s = gadget.certificate.escape_transversal(cops)
            assert not set(s) & set(cops)

    def test_hypothesis_violations(self):
        h, desc = build_hts(3, 2)
        with pytest.raises(ValueError):
            build_guard_adversary(h, desc, k=2)  # m = 2 is not > k
        h5, desc5 = build_hts(5, 2)
        with pytest.raises(ValueError):
            build_guard_adversary(h5, desc5, k=2)  # s = 2 is not > k
        with pytest.raises(ValueError):
            gadget = build_guard_adversary(h, desc, k=1)
            gadget.certificate.cop_free_subset((0, 1))


class TestHoleGadget:
    def test_c4_wheel(self):
        g = cycle(4)
        gadget = build_hole_gadget(g, find_hole(g))
        assert gadget.n == 5 and gadget.m == 8
        assert set(gadget.neighbors(4)) == {0, 1, 2, 3}

    def test_radius_two_path(self):
        g = cycle(7)
        hole = find_hole(g)
        assert hole == Hole(centers=(0, 1, 4), radii=(1, 1, 2))
        gadget = build_hole_gadget(g, hole)
        assert gadget.n == 9
        assert gadget.has_edge(7, 0) and gadget.has_edge(7, 1)
        assert gadget.has_edge(7, 8) and gadget.has_edge(8, 4)

    def test_invalid_hole_rejected(self):
        with pytest.raises(ValueError):
            build_hole_gadget(cycle(6), Hole(centers=(0, 1, 3), radii=(1, 1, 1)))

    def test_isometry_preserved_small_corpus(self):
        checked = 0
        for n in range(3, 7):
            for g in connected_graphs(n):
                if is_helly(g):
                    continue
                gadget = build_hole_gadget(g, find_hole(g))
                assert is_isometric_subgraph(gadget, range(g.n))
                checked += 1
        assert checked >= 10
