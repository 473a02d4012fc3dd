import itertools
import random

import pytest

from atx.coloring import enumerate_proper_colorings
from atx.errors import InvalidInput, NoColoring
from atx.graphs import chain_of_diamonds, make_graph
from atx.structure import (
    block_decomposition,
    colorings3,
    diamond_link_graph,
    edge_feasibility_dichotomy,
    feasible_from_coloring,
    genuine_2_vertices,
    has_k4_minor_bruteforce,
    is_blocked_triple,
    is_chain_connected,
    is_feasible_triple,
    is_gallai_tree,
    is_k4_minor_free,
    is_triangle_free,
    structure_report,
    two_nonadjacent_2vertices,
)
from conftest import complete, cycle, path, subdivided_k4


def random_graph(rng, n, p=0.5):
    return make_graph(
        n,
        [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p],
    )


def exists_chain_hom(g, xs):
    """Brute-force search for a chain-of-diamonds homomorphism whose hub
    images cover xs; independent of the link-graph reduction."""
    xs = set(xs)
    verts = list(g.vertices())

    successors = {hub: set() for hub in verts}
    for hub in verts:
        for v, w in itertools.combinations(g.neighbors(hub), 2):
            if g.has_edge(v, w):
                for nxt in verts:
                    if (
                        nxt not in (v, w)
                        and g.has_edge(v, nxt)
                        and g.has_edge(w, nxt)
                    ):
                        successors[hub].add(nxt)

    # search over (hub, covered) states: a covering hub walk exists exactly
    # when a full-coverage state is reachable
    frontier = []
    for start in verts:
        if len(xs) == 1 and start in xs and _on_triangle(g, start):
            return True  # degenerate diamond with both hubs on start
        if successors[start]:
            frontier.append((start, frozenset({start} & xs)))
    seen = set(frontier)
    while frontier:
        hub, covered = frontier.pop()
        if covered == xs:
            return True
        for nxt in successors[hub]:
            state = (nxt, covered | ({nxt} & xs))
            if state not in seen:
                seen.add(state)
                frontier.append(state)
    return False


def _on_triangle(g, v):
    return any(
        g.has_edge(p, q) for p, q in itertools.combinations(g.neighbors(v), 2)
    )


class TestK4MinorFree:
    def test_k4(self, k4):
        assert not is_k4_minor_free(k4)

    def test_trees_and_cycles(self):
        assert is_k4_minor_free(path(6))
        assert is_k4_minor_free(cycle(7))

    def test_d3(self, d3):
        assert is_k4_minor_free(d3)

    def test_wheel(self):
        w4 = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)])
        assert not is_k4_minor_free(w4)

    def test_subdivided_k4_has_minor(self):
        assert not is_k4_minor_free(subdivided_k4())

    def test_agrees_with_bruteforce(self):
        rng = random.Random(71)
        for _ in range(120):
            g = random_graph(rng, rng.randint(1, 8), rng.choice([0.25, 0.4, 0.6]))
            assert is_k4_minor_free(g) == (not has_k4_minor_bruteforce(g))

    def test_k4mf_implies_2_degenerate(self):
        from atx.graphs import degeneracy

        rng = random.Random(73)
        for _ in range(80):
            g = random_graph(rng, rng.randint(1, 8), 0.35)
            if is_k4_minor_free(g):
                assert degeneracy(g) <= 2


class TestDiamondLinkGraph:
    def test_d1_single_link(self, d1):
        dlg = diamond_link_graph(d1)
        assert dlg.links == ((0, 3),)
        p, q = dlg.witnesses[(0, 3)]
        assert {p, q} == {1, 2}

    def test_triangle_free_no_links(self, c6):
        assert diamond_link_graph(c6).links == ()

    def test_k4_all_pairs(self, k4):
        assert len(diamond_link_graph(k4).links) == 6

    def test_links_are_single_diamond_images(self):
        rng = random.Random(77)
        for _ in range(60):
            g = random_graph(rng, rng.randint(2, 7), 0.5)
            dlg = diamond_link_graph(g)
            linked = set(dlg.links)
            for a, b in itertools.combinations(g.vertices(), 2):
                # one diamond connecting a and b means exactly a link
                one_diamond = any(
                    g.has_edge(p, q)
                    for p, q in itertools.combinations(
                        sorted(set(g.neighbors(a)) & set(g.neighbors(b)) - {a, b}), 2
                    )
                )
                assert one_diamond == ((a, b) in linked)


class TestChainConnected:
    def test_d1_hub_pair(self, d1):
        assert is_chain_connected(d1, (0, 3))

    def test_d1_hub_and_side(self, d1):
        assert not is_chain_connected(d1, (0, 1))

    def test_c5_nothing(self, c5):
        for xs in itertools.combinations(range(5), 2):
            assert not is_chain_connected(c5, xs)

    def test_dn_hub_set(self):
        for n in (1, 2, 3):
            g, hubs = chain_of_diamonds(n)
            assert is_chain_connected(g, hubs)

    def test_singleton_on_triangle(self, k3, c4):
        assert is_chain_connected(k3, (0,))
        assert not is_chain_connected(c4, (0,))

    def test_matches_homomorphism_search(self):
        rng = random.Random(79)
        for _ in range(40):
            g = random_graph(rng, rng.randint(2, 6), 0.55)
            for size in (1, 2, 3):
                xs = tuple(rng.sample(range(g.n), min(size, g.n)))
                got = is_chain_connected(g, xs)
                hom = exists_chain_hom(g, set(xs))
                assert got == hom

    def test_chained_implies_monochromatic(self):
        rng = random.Random(83)
        for _ in range(40):
            g = random_graph(rng, rng.randint(2, 7), 0.4)
            for xs in itertools.combinations(g.vertices(), 2):
                if is_chain_connected(g, xs):
                    for phi in enumerate_proper_colorings(g, 3):
                        assert len({phi[v] for v in xs}) == 1


class TestFeasibleBlocked:
    def test_k3_infeasible(self, k3):
        assert not is_feasible_triple(k3, 0, 1, 2)

    def test_path_triple_feasible(self):
        g = path(3)
        assert is_feasible_triple(g, 0, 1, 2)

    def test_d1_feasible_triple(self, d1):
        assert is_feasible_triple(d1, 0, 3, 1)

    def test_k3_blocked(self, k3):
        assert is_blocked_triple(k3, 0, 1, 2)

    def test_path_not_blocked(self):
        assert not is_blocked_triple(path(3), 0, 1, 2)

    def test_d1_two_hubs_plus_side_not_blocked(self, d1):
        # hubs always share a color, the side differs: size is always 2
        assert not is_blocked_triple(d1, 0, 3, 2)
        sizes = {
            len({phi[0], phi[3], phi[2]}) for phi in colorings3(d1)
        }
        assert sizes == {2}

    def test_blocked_needs_coloring(self, k4):
        with pytest.raises(NoColoring):
            is_blocked_triple(k4, 0, 1, 2)

    def test_blocked_implies_infeasible(self):
        rng = random.Random(89)
        for _ in range(60):
            g = random_graph(rng, rng.randint(3, 7), 0.4)
            if not is_k4_minor_free(g) or not colorings3(g):
                continue
            for xs in itertools.combinations(g.vertices(), 3):
                if is_blocked_triple(g, *xs):
                    assert not is_feasible_triple(g, *xs)

    def test_distinctness_required(self, c5):
        with pytest.raises(InvalidInput):
            is_feasible_triple(c5, 0, 0, 1)


class TestFeasibleFromColoring:
    def test_d1(self, d1):
        assert feasible_from_coloring(d1, (0, 3, 1))

    def test_k3_vacuous(self, k3):
        assert feasible_from_coloring(k3, (0, 1, 2))

    def test_sweep_small(self):
        rng = random.Random(97)
        for _ in range(60):
            g = random_graph(rng, rng.randint(3, 7), 0.4)
            if not is_k4_minor_free(g):
                continue
            for xs in itertools.combinations(g.vertices(), 3):
                assert feasible_from_coloring(g, xs)


class TestEdgeDichotomy:
    def test_d1(self, d1):
        assert edge_feasibility_dichotomy(d1, 1, 2, 0, 3)

    def test_requires_edge(self, d1):
        with pytest.raises(InvalidInput):
            edge_feasibility_dichotomy(d1, 0, 3, 1, 2)

    def test_sweep_small(self):
        rng = random.Random(101)
        for _ in range(50):
            g = random_graph(rng, rng.randint(4, 7), 0.4)
            if not is_k4_minor_free(g):
                continue
            for (x, xp) in g.edges:
                rest = [v for v in g.vertices() if v not in (x, xp)]
                for y, z in itertools.combinations(rest, 2):
                    assert edge_feasibility_dichotomy(g, x, xp, y, z)


class TestGenuine2Vertices:
    def test_d1(self, d1):
        assert genuine_2_vertices(d1) == {0, 3}

    def test_precondition_min_degree(self):
        with pytest.raises(InvalidInput):
            genuine_2_vertices(path(4))

    def test_precondition_cycle(self, c5):
        with pytest.raises(InvalidInput):
            genuine_2_vertices(c5)

    def test_two_2vertices_both_genuine(self):
        rng = random.Random(103)
        seen = 0
        for _ in range(300):
            g = random_graph(rng, rng.randint(4, 8), 0.45)
            try:
                twos = [v for v in g.vertices() if g.degree(v) == 2]
                if len(twos) != 2:
                    continue
                genuine = genuine_2_vertices(g)
            except InvalidInput:
                continue
            seen += 1
            assert set(twos) == genuine
        assert seen >= 3  # the generator really produced such graphs


class TestTwoNonadjacent:
    def test_d1(self, d1):
        assert two_nonadjacent_2vertices(d1)

    def test_cycle_rejected(self, c6):
        with pytest.raises(InvalidInput):
            two_nonadjacent_2vertices(c6)

    def test_sweep(self):
        rng = random.Random(107)
        for _ in range(200):
            g = random_graph(rng, rng.randint(4, 8), 0.4)
            try:
                assert two_nonadjacent_2vertices(g)
            except InvalidInput:
                continue


class TestGallaiTree:
    def test_c5(self, c5):
        assert is_gallai_tree(c5)

    def test_c4(self, c4):
        assert not is_gallai_tree(c4)

    def test_two_triangles_sharing_vertex(self):
        g = make_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        assert is_gallai_tree(g)
        assert block_decomposition(g).cut_vertices == {2}

    def test_tree_is_gallai(self):
        assert is_gallai_tree(path(5))

    def test_disconnected_rejected(self):
        g = make_graph(4, [(0, 1), (2, 3)])
        with pytest.raises(InvalidInput):
            is_gallai_tree(g)


class TestTriangleFree:
    def test_values(self, c6, d1, k4):
        assert is_triangle_free(c6)
        assert not is_triangle_free(d1)
        assert not is_triangle_free(k4)


class TestStructureReport:
    def test_d2(self, d2):
        rep = structure_report(d2)
        assert rep["k4minorfree"] is True
        assert rep["mad"] == "20/7"
        assert rep["trianglefree"] is False

    def test_k4(self, k4):
        rep = structure_report(k4)
        assert rep["k4minorfree"] is False
        assert rep["mad"] == "3/1"
        assert rep["genuine2"] == []

    def test_c6(self, c6):
        rep = structure_report(c6)
        assert rep["trianglefree"] is True
        assert rep["links"] == []
