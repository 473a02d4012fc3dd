"""Exhaustive small-graph corpora for sweeps and acceptance runs.

Graphs are generated up to isomorphism by vertex augmentation with
canonical-form deduplication.  The canonical form refines vertex signatures
Weisfeiler-Leman style and then minimizes the adjacency bitstring over all
signature-respecting labelings, which is exact: equal certificates mean
isomorphic graphs.  Counts are validated in the tests against the known
numbers of graphs and connected graphs on up to eight vertices.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .errors import InvalidParameter
from .graphs import Graph, is_connected, make_graph
from .structure import is_k4_minor_free, is_triangle_free


def canonical_form(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant certificate (n, minimized adjacency bits)."""
    n = g.n
    if n == 0:
        return (0, 0)

    sig: list = [g.degree(v) for v in range(n)]
    while True:
        fresh = [
            (sig[v], tuple(sorted(sig[w] for w in g.neighbors(v)))) for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(fresh)))}
        new_sig = [ranks[fresh[v]] for v in range(n)]
        if len(set(new_sig)) == len(set(sig)) and new_sig == sig:
            break
        stable = len(set(new_sig)) == len(set(sig))
        sig = new_sig
        if stable:
            break

    # positions grouped by signature; labelings may only permute inside cells
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(sig[v], []).append(v)
    cell_of_pos: list[list[int]] = []
    for key in sorted(cells):
        cell_of_pos.extend([cells[key]] * len(cells[key]))

    best: Optional[list[int]] = None
    perm: list[int] = []
    used = [False] * n
    rows: list[int] = []

    def place(k: int, tight: bool) -> None:
        nonlocal best
        if k == n:
            if best is None or rows < best:
                best = list(rows)
            return
        for v in cell_of_pos[k]:
            if used[v]:
                continue
            row = 0
            bitsv = g.adj_bits[v]
            for i in range(k):
                if bitsv >> perm[i] & 1:
                    row |= 1 << i
            if best is not None and tight:
                if row > best[k]:
                    continue
                now_tight = row == best[k]
            else:
                now_tight = tight
            used[v] = True
            perm.append(v)
            rows.append(row)
            place(k + 1, now_tight)
            rows.pop()
            perm.pop()
            used[v] = False

    place(0, True)
    assert best is not None
    packed = 0
    shift = 0
    for k, row in enumerate(best):
        packed |= row << shift
        shift += k
    return (n, packed)


_connected_cache: dict[int, list[Graph]] = {}
_all_cache: dict[int, list[Graph]] = {}
_tf_cache: dict[int, list[Graph]] = {}
_two_tree_cache: dict[int, list[Graph]] = {}

GEN_GUARD = 9


def _augment(parent: Graph, neighborhood: tuple[int, ...]) -> Graph:
    edges = list(parent.edges) + [(v, parent.n) for v in neighborhood]
    return Graph(parent.n + 1, edges)


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on n vertices, one per isomorphism class."""
    if not (1 <= n <= GEN_GUARD):
        raise InvalidParameter(f"corpus generation supports 1..{GEN_GUARD} vertices")
    if n in _connected_cache:
        return _connected_cache[n]
    if n == 1:
        out = [make_graph(1, [])]
    else:
        seen = {}
        for parent in connected_graphs(n - 1):
            verts = list(range(parent.n))
            for r in range(1, parent.n + 1):
                for sub in itertools.combinations(verts, r):
                    child = _augment(parent, sub)
                    key = canonical_form(child)
                    if key not in seen:
                        seen[key] = child
        out = list(seen.values())
    _connected_cache[n] = out
    return out


def all_graphs(n: int) -> list[Graph]:
    """All graphs on n vertices (disconnected included), up to isomorphism."""
    if not (1 <= n <= GEN_GUARD):
        raise InvalidParameter(f"corpus generation supports 1..{GEN_GUARD} vertices")
    if n in _all_cache:
        return _all_cache[n]
    if n == 1:
        out = [make_graph(1, [])]
    else:
        seen = {}
        for parent in all_graphs(n - 1):
            verts = list(range(parent.n))
            for r in range(0, parent.n + 1):
                for sub in itertools.combinations(verts, r):
                    child = _augment(parent, sub)
                    key = canonical_form(child)
                    if key not in seen:
                        seen[key] = child
        out = list(seen.values())
    _all_cache[n] = out
    return out


def connected_triangle_free(n: int) -> list[Graph]:
    """Connected triangle-free graphs up to isomorphism.

    Augmentation restricted to independent neighborhoods stays complete:
    deleting a non-cut vertex of a connected triangle-free graph leaves a
    smaller one, and the removed vertex's neighborhood was independent.
    """
    if not (1 <= n <= GEN_GUARD):
        raise InvalidParameter(f"corpus generation supports 1..{GEN_GUARD} vertices")
    if n in _tf_cache:
        return _tf_cache[n]
    if n == 1:
        out = [make_graph(1, [])]
    else:
        seen = {}
        for parent in connected_triangle_free(n - 1):
            verts = list(range(parent.n))
            for r in range(1, parent.n + 1):
                for sub in itertools.combinations(verts, r):
                    if any(
                        parent.has_edge(a, b)
                        for a, b in itertools.combinations(sub, 2)
                    ):
                        continue
                    child = _augment(parent, sub)
                    key = canonical_form(child)
                    if key not in seen:
                        seen[key] = child
        out = list(seen.values())
    _tf_cache[n] = out
    return out


def two_trees(n: int) -> list[Graph]:
    """2-trees on n >= 3 vertices: K3 grown by vertices glued onto edges."""
    if not (3 <= n <= GEN_GUARD):
        raise InvalidParameter(f"2-tree generation supports 3..{GEN_GUARD} vertices")
    if n in _two_tree_cache:
        return _two_tree_cache[n]
    if n == 3:
        out = [make_graph(3, [(0, 1), (1, 2), (0, 2)])]
    else:
        seen = {}
        for parent in two_trees(n - 1):
            for (u, v) in parent.edges:
                child = _augment(parent, (u, v))
                key = canonical_form(child)
                if key not in seen:
                    seen[key] = child
        out = list(seen.values())
    _two_tree_cache[n] = out
    return out


def graphs_up_to(n: int, connected: bool = True) -> Iterator[Graph]:
    source = connected_graphs if connected else all_graphs
    for k in range(1, n + 1):
        yield from source(k)


def k4_minor_free_connected(n: int) -> list[Graph]:
    return [g for g in connected_graphs(n) if is_k4_minor_free(g)]


def triangle_free_k4mf_connected(n: int) -> list[Graph]:
    return [g for g in connected_triangle_free(n) if is_k4_minor_free(g)]


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return canonical_form(a) == canonical_form(b)
