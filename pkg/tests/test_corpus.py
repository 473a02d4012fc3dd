import itertools
import random

import pytest

from atx.coloring import has_unique_3_coloring
from atx.corpus import (
    all_graphs,
    canonical_form,
    connected_graphs,
    connected_triangle_free,
    is_isomorphic,
    k4_minor_free_connected,
    triangle_free_k4mf_connected,
    two_trees,
)
from atx.graphs import is_connected, make_graph
from atx.structure import is_k4_minor_free, is_triangle_free

# numbers of graphs and connected graphs on n vertices, n = 1..7
ALL_COUNTS = [1, 2, 4, 11, 34, 156, 1044]
CONNECTED_COUNTS = [1, 1, 2, 6, 21, 112, 853]


class TestCanonicalForm:
    def test_invariant_under_relabeling(self):
        rng = random.Random(401)
        for _ in range(80):
            n = rng.randint(1, 7)
            edges = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.5
            ]
            g = make_graph(n, edges)
            perm = list(range(n))
            rng.shuffle(perm)
            h = make_graph(n, [(perm[u], perm[v]) for (u, v) in edges])
            assert canonical_form(g) == canonical_form(h)

    def test_separates_nonisomorphic(self):
        # path P4 vs star K1,3: same degree sums, different graphs
        p4 = make_graph(4, [(0, 1), (1, 2), (2, 3)])
        star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
        assert canonical_form(p4) != canonical_form(star)

    def test_is_isomorphic_helper(self):
        a = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        b = make_graph(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
        assert is_isomorphic(a, b)

    def test_against_networkx(self):
        nx = pytest.importorskip("networkx")
        rng = random.Random(403)
        for _ in range(120):
            n = rng.randint(2, 7)
            g = make_graph(
                n,
                [
                    (i, j)
                    for i in range(n)
                    for j in range(i + 1, n)
                    if rng.random() < 0.5
                ],
            )
            h = make_graph(
                n,
                [
                    (i, j)
                    for i in range(n)
                    for j in range(i + 1, n)
                    if rng.random() < 0.5
                ],
            )
            ga = nx.Graph(list(g.edges))
            ga.add_nodes_from(range(n))
            hb = nx.Graph(list(h.edges))
            hb.add_nodes_from(range(n))
            assert (canonical_form(g) == canonical_form(h)) == nx.is_isomorphic(ga, hb)


class TestGeneration:
    def test_connected_counts(self):
        for n, want in enumerate(CONNECTED_COUNTS, start=1):
            if n > 7:
                break
            assert len(connected_graphs(n)) == want

    def test_all_counts(self):
        for n, want in enumerate(ALL_COUNTS[:6], start=1):
            assert len(all_graphs(n)) == want

    def test_generated_are_connected(self):
        for g in connected_graphs(6):
            assert is_connected(g)

    def test_triangle_free_matches_filter(self):
        for n in range(1, 8):
            direct = {g for g in map(canonical_form, connected_triangle_free(n))}
            filtered = {
                canonical_form(g)
                for g in connected_graphs(n)
                if is_triangle_free(g)
            }
            assert direct == filtered

    def test_k4mf_subsets(self):
        for g in k4_minor_free_connected(6):
            assert is_k4_minor_free(g)
        for g in triangle_free_k4mf_connected(6):
            assert is_k4_minor_free(g) and is_triangle_free(g)

    def test_two_trees(self):
        for n in range(3, 8):
            trees = two_trees(n)
            for g in trees:
                assert g.m == 2 * g.n - 3
                assert is_k4_minor_free(g)
                assert has_unique_3_coloring(g)
        assert len(two_trees(3)) == 1
        assert len(two_trees(4)) == 1
        assert len(two_trees(5)) == 2
        assert len(two_trees(6)) == 5
