"""Structural predicates: K4-minor-freeness, diamond links, feasible and
blocked triples, genuine 2-vertices, Gallai trees.

Chain-of-diamonds connectivity is decided through the diamond link graph:
a pair (a, b) is linked when some adjacent pair p, q outside {a, b} is
adjacent to both a and b, which is exactly the image of one diamond with
distinct hub images.  Hub images of consecutive diamonds may coincide, so a
set of two or more vertices is chain-connected precisely when all of them
are link-incident and lie in one link component, while a single vertex only
needs to lie on a triangle (a diamond may map both hubs onto it).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .coloring import enumerate_proper_colorings
from .errors import InvalidInput, NoColoring, TooLarge
from .graphs import Graph, connected_components, is_connected


@dataclass(frozen=True)
class DiamondLinkGraph:
    """Link pairs with one witnessing adjacent common-neighbor pair each."""

    base: Graph
    links: tuple  # sorted tuple of (a, b) pairs, a < b
    witnesses: dict  # (a, b) -> (p, q)


@dataclass(frozen=True)
class BlockDecomposition:
    """2-connected components (bridges included as K2) and cut vertices."""

    blocks: tuple  # tuple of tuples of edges, each a (u, v) pair
    cut_vertices: frozenset


@lru_cache(maxsize=4096)
def diamond_link_graph(g: Graph) -> DiamondLinkGraph:
    """All pairs joined by a single diamond image, with witnesses."""
    links = []
    witnesses = {}
    for a, b in itertools.combinations(g.vertices(), 2):
        common = [
            p for p in g.neighbors(a) if p != b and g.has_edge(p, b)
        ]
        found = None
        for p, q in itertools.combinations(common, 2):
            if g.has_edge(p, q):
                found = (p, q)
                break
        if found is not None:
            links.append((a, b))
            witnesses[(a, b)] = found
    return DiamondLinkGraph(g, tuple(links), witnesses)


@lru_cache(maxsize=4096)
def _link_component_ids(g: Graph) -> tuple:
    """Component id per vertex in the link relation; -1 for link-isolated."""
    dlg = diamond_link_graph(g)
    comp = [-1] * g.n
    adj: dict[int, list[int]] = {}
    for (a, b) in dlg.links:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    cid = 0
    for v in sorted(adj):
        if comp[v] != -1:
            continue
        stack = [v]
        comp[v] = cid
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] == -1:
                    comp[w] = cid
                    stack.append(w)
        cid += 1
    return tuple(comp)


def on_triangle(g: Graph, v: int) -> bool:
    nbrs = g.neighbors(v)
    return any(
        g.has_edge(p, q) for p, q in itertools.combinations(nbrs, 2)
    )


def is_chain_connected(g: Graph, xs: Iterable[int]) -> bool:
    """Whether some chain of diamonds maps its hubs onto all of ``xs``.

    For two or more vertices this reduces to the link graph: every vertex
    of xs must be incident to a link and all must share one link component.
    A singleton is covered by a degenerate diamond whose hubs coincide, so
    it only needs to lie on a triangle.
    """
    xs = sorted(set(xs))
    if not xs:
        raise InvalidInput("chain connectivity needs at least one vertex")
    for v in xs:
        if not (0 <= v < g.n):
            raise InvalidInput(f"vertex {v} out of range")
    if len(xs) == 1:
        return on_triangle(g, xs[0])
    comp = _link_component_ids(g)
    ids = {comp[v] for v in xs}
    return -1 not in ids and len(ids) == 1


@lru_cache(maxsize=4096)
def colorings3(g: Graph) -> tuple:
    """All proper 3-colorings, memoized; shared by triple predicates."""
    return tuple(enumerate_proper_colorings(g, 3))


def is_feasible_triple(g: Graph, x: int, y: int, z: int) -> bool:
    """Not chain-connected and some 3-coloring uses at most 2 colors on it."""
    _check_triple(g, x, y, z)
    if is_chain_connected(g, (x, y, z)):
        return False
    return any(
        len({phi[x], phi[y], phi[z]}) <= 2 for phi in colorings3(g)
    )


def is_blocked_triple(g: Graph, x: int, y: int, z: int) -> bool:
    """Every 3-coloring rainbow on the triple, or every one constant."""
    _check_triple(g, x, y, z)
    phis = colorings3(g)
    if not phis:
        raise NoColoring("graph admits no proper 3-coloring")
    sizes = {len({phi[x], phi[y], phi[z]}) for phi in phis}
    return sizes == {3} or sizes == {1}


def _check_triple(g: Graph, x: int, y: int, z: int) -> None:
    if len({x, y, z}) != 3:
        raise InvalidInput("triple vertices must be distinct")
    for v in (x, y, z):
        if not (0 <= v < g.n):
            raise InvalidInput(f"vertex {v} out of range")
    if g.n > 24:
        raise TooLarge("triple predicates guarded at 24 vertices")


def feasible_from_coloring(g: Graph, xs: Sequence[int]) -> bool:
    """Tested implication: a 2-color 3-coloring on X forces feasibility."""
    if len(xs) != 3 or len(set(xs)) != 3:
        raise InvalidInput("X must hold three distinct vertices")
    if not is_k4_minor_free(g):
        raise InvalidInput("identity asserted for K4-minor-free graphs only")
    x, y, z = xs
    has_two = any(len({phi[x], phi[y], phi[z]}) == 2 for phi in colorings3(g))
    if not has_two:
        return True  # vacuous
    return is_feasible_triple(g, x, y, z)


def edge_feasibility_dichotomy(g: Graph, x: int, xp: int, y: int, z: int) -> bool:
    """At least one of {x,y,z}, {x',y,z} is feasible when xx' is an edge."""
    if not g.has_edge(x, xp):
        raise InvalidInput("xx' must be an edge")
    if y in (x, xp) or z in (x, xp) or y == z:
        raise InvalidInput("y, z must be distinct vertices outside {x, x'}")
    if not is_k4_minor_free(g):
        raise InvalidInput("dichotomy asserted for K4-minor-free graphs only")
    return is_feasible_triple(g, x, y, z) or is_feasible_triple(g, xp, y, z)


# -- K4 minors ---------------------------------------------------------------


@lru_cache(maxsize=8192)
def is_k4_minor_free(g: Graph) -> bool:
    """Series-parallel reduction per component.

    Iteratively delete vertices of degree <= 1 and suppress degree-2
    vertices, keeping the reduction graph simple by dropping the parallel
    edges and loops this creates.  A component reduces below 4 vertices
    exactly when it has no K4 minor; a simple graph stuck at minimum
    degree 3 always contains one.
    """
    for comp in connected_components(g):
        adj = {v: set(g.neighbors(v)) & set(comp) for v in comp}
        changed = True
        while changed and len(adj) >= 4:
            changed = False
            for v in list(adj):
                d = len(adj[v])
                if d <= 1:
                    for w in adj[v]:
                        adj[w].discard(v)
                    del adj[v]
                    changed = True
                elif d == 2:
                    a, b = sorted(adj[v])
                    adj[a].discard(v)
                    adj[b].discard(v)
                    del adj[v]
                    adj[a].add(b)  # parallel edges collapse, loops impossible
                    adj[b].add(a)
                    changed = True
        if len(adj) >= 4:
            return False
    return True


def has_k4_minor_bruteforce(g: Graph) -> bool:
    """Explicit search for four disjoint, connected, pairwise adjacent
    branch sets; cross-check oracle for graphs of at most 9 vertices."""
    if g.n > 9:
        raise TooLarge("brute-force minor search guarded at 9 vertices")
    if g.n < 4:
        return False
    bits = g.adj_bits
    full = (1 << g.n) - 1

    connected_subsets = []
    for mask in range(1, full + 1):
        lowest = mask & -mask
        frontier = lowest
        seen = lowest
        while frontier:
            nxt = 0
            v = frontier
            while v:
                low = v & -v
                nxt |= bits[low.bit_length() - 1] & mask
                v ^= low
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
        if seen == mask:
            connected_subsets.append(mask)

    def touches(a: int, b: int) -> bool:
        v = a
        while v:
            low = v & -v
            if bits[low.bit_length() - 1] & b:
                return True
            v ^= low
        return False

    subs = connected_subsets
    for i, s1 in enumerate(subs):
        for j in range(i + 1, len(subs)):
            s2 = subs[j]
            if s1 & s2 or not touches(s1, s2):
                continue
            for k in range(j + 1, len(subs)):
                s3 = subs[k]
                if s3 & (s1 | s2):
                    continue
                if not (touches(s3, s1) and touches(s3, s2)):
                    continue
                for l in range(k + 1, len(subs)):
                    s4 = subs[l]
                    if s4 & (s1 | s2 | s3):
                        continue
                    if touches(s4, s1) and touches(s4, s2) and touches(s4, s3):
                        return True
    return False


# -- degree-2 structure -------------------------------------------------------


def _check_min2_noncycle(g: Graph) -> None:
    if not is_connected(g):
        raise InvalidInput("graph must be connected")
    if g.n == 0 or min(g.degree(v) for v in g.vertices()) < 2:
        raise InvalidInput("graph must have minimum degree 2")
    if all(g.degree(v) == 2 for v in g.vertices()):
        raise InvalidInput("graph must not be a cycle")
    if not is_k4_minor_free(g):
        raise InvalidInput("graph must be K4-minor-free")


def genuine_configurations(g: Graph, v: int) -> list[tuple]:
    """All witnessing tuples (u1, u2, w1, kind) that make v genuine.

    kind "triangle-cherry": d(u1) = 3 and u1's third neighbor w1 is
    adjacent to u2.  kind "diamond": both u_i are 3-vertices with distinct
    third neighbors joined by an edge; w1 is u1's third neighbor and u2's
    follows from the degrees.
    """
    configs = []
    if g.degree(v) != 2:
        return configs
    a, b = g.neighbors(v)
    if not g.has_edge(a, b):
        return configs
    for (u1, u2) in ((a, b), (b, a)):
        if g.degree(u1) == 3:
            (w1,) = [w for w in g.neighbors(u1) if w not in (v, u2)]
            if g.has_edge(w1, u2):
                configs.append((u1, u2, w1, "triangle-cherry"))
    if g.degree(a) == 3 and g.degree(b) == 3:
        (wa,) = [w for w in g.neighbors(a) if w not in (v, b)]
        (wb,) = [w for w in g.neighbors(b) if w not in (v, a)]
        if wa != wb and g.has_edge(wa, wb):
            configs.append((a, b, wa, "diamond"))
            configs.append((b, a, wb, "diamond"))
    return configs


def genuine_2_vertices(g: Graph) -> set:
    """The 2-vertices on a triangle satisfying either genuineness rule."""
    _check_min2_noncycle(g)
    return {
        v
        for v in g.vertices()
        if g.degree(v) == 2 and genuine_configurations(g, v)
    }


def two_nonadjacent_2vertices(g: Graph) -> bool:
    """Existence scan for two non-adjacent 2-vertices (always succeeds on
    connected K4-minor-free non-cycles of minimum degree 2)."""
    _check_min2_noncycle(g)
    twos = [v for v in g.vertices() if g.degree(v) == 2]
    return any(
        not g.has_edge(u, v) for u, v in itertools.combinations(twos, 2)
    )


# -- blocks and Gallai trees --------------------------------------------------


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Standard DFS biconnected-components decomposition."""
    disc = [-1] * g.n
    low = [0] * g.n
    timer = [0]
    stack: list[tuple[int, int]] = []
    blocks: list[tuple] = []
    cuts: set[int] = set()

    def dfs(u: int, parent: int) -> None:
        disc[u] = low[u] = timer[0]
        timer[0] += 1
        children = 0
        for w in g.neighbors(u):
            if disc[w] == -1:
                children += 1
                stack.append((u, w))
                dfs(w, u)
                low[u] = min(low[u], low[w])
                if (parent == -1 and children > 1) or (
                    parent != -1 and low[w] >= disc[u]
                ):
                    cuts.add(u)
                if low[w] >= disc[u]:
                    block = []
                    while stack:
                        e = stack.pop()
                        block.append(e)
                        if e == (u, w):
                            break
                    blocks.append(tuple(block))
            elif w != parent and disc[w] < disc[u]:
                stack.append((u, w))
                low[u] = min(low[u], disc[w])

    for v in g.vertices():
        if disc[v] == -1 and g.degree(v) > 0:
            dfs(v, -1)
            if stack:
                blocks.append(tuple(stack))
                stack.clear()
    return BlockDecomposition(tuple(blocks), frozenset(cuts))


def is_gallai_tree(g: Graph) -> bool:
    """Every block a complete graph or an odd cycle (bridges count as K2)."""
    if not is_connected(g):
        raise InvalidInput("Gallai tree test requires a connected graph")
    for block in block_decomposition(g).blocks:
        verts = sorted({v for e in block for v in e})
        k, e_count = len(verts), len(block)
        if e_count == k * (k - 1) // 2:
            continue  # complete
        degs: dict[int, int] = {}
        for (u, v) in block:
            degs[u] = degs.get(u, 0) + 1
            degs[v] = degs.get(v, 0) + 1
        if e_count == k and k % 2 == 1 and all(d == 2 for d in degs.values()):
            continue  # odd cycle
        return False
    return True


def is_triangle_free(g: Graph) -> bool:
    return not any(on_triangle(g, v) for v in g.vertices())


def structure_report(g: Graph) -> dict:
    """The CLI-facing aggregate report."""
    from .graphs import max_average_degree

    mad = max_average_degree(g)
    dlg = diamond_link_graph(g)
    try:
        genuine = sorted(genuine_2_vertices(g))
    except InvalidInput:
        genuine = []
    return {
        "k4minorfree": is_k4_minor_free(g),
        "mad": f"{mad.numerator}/{mad.denominator}",
        "trianglefree": is_triangle_free(g),
        "genuine2": genuine,
        "links": [list(p) for p in dlg.links],
    }
