"""Simple graphs, contraction multigraphs, generators and exact invariants.

Vertices are dense integers 0..n-1.  Graph values are immutable after
construction and hashable, so they can key memoization tables and be shared
freely across threads.  Deletion therefore re-indexes and returns the
re-index map instead of leaving holes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DuplicateEdge,
    InvalidEdge,
    InvalidParameter,
    ParseError,
    UnanchoredComponent,
)


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Edges are stored canonically as a sorted tuple of pairs (u, v) with
    u < v.  Per-vertex neighbor tuples and adjacency bitmasks are
    precomputed; bitmasks make the backtracking searches cheap.
    """

    __slots__ = ("n", "edges", "adj", "adj_bits", "_edge_index", "_hash")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        self.n = n
        self.edges = tuple(sorted(tuple(sorted(e)) for e in edges))
        adj = [[] for _ in range(n)]
        bits = [0] * n
        for (u, v) in self.edges:
            adj[u].append(v)
            adj[v].append(u)
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.adj_bits = tuple(bits)
        self._edge_index = {e: i for i, e in enumerate(self.edges)}
        self._hash = hash((n, self.edges))

    # -- basic queries ----------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_index

    def edge_index(self, u: int, v: int) -> int:
        return self._edge_index[(min(u, v), max(u, v))]

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class MultiGraph:
    """Undirected multigraph produced by suppressing 2-vertex chains.

    Vertices are dense 0..n-1.  ``source_vertex[i]`` names the vertex of the
    originating Graph that multigraph vertex i stands for.  Each edge
    instance (u, v) with u <= v carries a back path: the full vertex walk in
    the source graph it replaces (endpoints included), or () for an edge
    that survived contraction unchanged.
    """

    __slots__ = ("n", "instances", "paths", "source_vertex")

    def __init__(
        self,
        n: int,
        instances: Sequence[tuple[int, int]],
        paths: Sequence[tuple[int, ...]],
        source_vertex: Sequence[int],
    ):
        if len(instances) != len(paths):
            raise InvalidParameter("one back path required per edge instance")
        self.n = n
        self.instances = tuple((min(u, v), max(u, v)) for (u, v) in instances)
        self.paths = tuple(tuple(p) for p in paths)
        self.source_vertex = tuple(source_vertex)

    def degree(self, v: int) -> int:
        d = 0
        for (u, w) in self.instances:
            if u == v:
                d += 1
            if w == v:
                d += 1
        return d  # loops contribute 2

    @property
    def m(self) -> int:
        return len(self.instances)

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


# -- construction and generators ------------------------------------------


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical Graph, rejecting loops, range errors and repeats."""
    if n < 0:
        raise InvalidParameter(f"vertex count must be non-negative, got {n}")
    seen = set()
    canon = []
    for (u, v) in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u},{v}) references a vertex outside [0,{n})")
        if u == v:
            raise InvalidEdge(f"loop at vertex {u} not allowed in a simple graph")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdge(f"edge {e} listed twice")
        seen.add(e)
        canon.append(e)
    return Graph(n, canon)


def chain_of_diamonds(n: int) -> tuple[Graph, list[int]]:
    """Chain of n diamonds with hub vertices u_0..u_n.

    Vertex layout: u_0 = 0 and, for i >= 1, v_i = 3i-2, w_i = 3i-1,
    u_i = 3i.  Returns the graph together with the hubs (u_0, ..., u_n).
    """
    if n < 1:
        raise InvalidParameter(f"chain length must be >= 1, got {n}")
    edges = []
    for i in range(1, n + 1):
        u_prev, v_i, w_i, u_i = 3 * i - 3, 3 * i - 2, 3 * i - 1, 3 * i
        edges += [(u_prev, v_i), (u_prev, w_i), (v_i, w_i), (v_i, u_i), (w_i, u_i)]
    return make_graph(3 * n + 1, edges), [3 * i for i in range(n + 1)]


def delete_vertices(g: Graph, remove: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the surviving vertices, densely re-indexed.

    Returns (subgraph, old_id -> new_id map for survivors).
    """
    gone = set(remove)
    keep = [v for v in g.vertices() if v not in gone]
    remap = {old: new for new, old in enumerate(keep)}
    edges = [
        (remap[u], remap[v]) for (u, v) in g.edges if u not in gone and v not in gone
    ]
    return make_graph(len(keep), edges), remap


def contract_two_chains(g: Graph, keep: Iterable[int]) -> MultiGraph:
    """Suppress every maximal chain of degree-2 vertices not in ``keep``.

    Each maximal path whose interior vertices are removable 2-vertices
    becomes one edge instance backed by the full source path.  A chordless
    cycle of removable vertices hanging on a single kept vertex becomes a
    loop.  A component consisting only of removable vertices has no anchor
    to hang on and is rejected.
    """
    kept_set = set(keep)
    removable = {
        v for v in g.vertices() if g.degree(v) == 2 and v not in kept_set
    }
    anchors = sorted(v for v in g.vertices() if v not in removable)

    # A component made purely of removable 2-vertices is a cycle with no
    # anchor; the contraction has nowhere to attach it.
    seen: set[int] = set()
    for v in removable:
        if v in seen:
            continue
        stack, comp, anchored = [v], set(), False
        while stack:
            w = stack.pop()
            if w in comp:
                continue
            comp.add(w)
            for x in g.neighbors(w):
                if x in removable:
                    if x not in comp:
                        stack.append(x)
                else:
                    anchored = True
        if not anchored:
            raise UnanchoredComponent(
                f"component {sorted(comp)} consists entirely of removable 2-vertices"
            )
        seen |= comp

    new_id = {old: i for i, old in enumerate(anchors)}
    instances: list[tuple[int, int]] = []
    paths: list[tuple[int, ...]] = []
    used_edges: set[tuple[int, int]] = set()

    def edge_key(a: int, b: int) -> tuple[int, int]:
        return (min(a, b), max(a, b))

    for a in anchors:
        for b in g.neighbors(a):
            start = edge_key(a, b)
            if start in used_edges:
                continue
            if b not in removable:
                used_edges.add(start)
                instances.append((new_id[a], new_id[b]))
                paths.append(())
                continue
            # walk the chain of removable 2-vertices until another anchor
            path = [a, b]
            used_edges.add(start)
            prev, cur = a, b
            while cur in removable:
                # a removable vertex has degree exactly 2 in a simple graph,
                # so there is exactly one way forward
                step = next(x for x in g.neighbors(cur) if x != prev)
                used_edges.add(edge_key(cur, step))
                path.append(step)
                prev, cur = cur, step
            instances.append((new_id[a], new_id[cur]))
            paths.append(tuple(path))

    return MultiGraph(len(anchors), instances, paths, anchors)


def expand_contraction(mg: MultiGraph) -> tuple[set[int], set[tuple[int, int]]]:
    """Rebuild the source vertex and edge sets from a contraction.

    Used by tests to confirm the contraction is lossless.
    """
    verts = set(mg.source_vertex)
    edges: set[tuple[int, int]] = set()
    for (u, v), path in zip(mg.instances, mg.paths):
        if not path:
            a, b = mg.source_vertex[u], mg.source_vertex[v]
            edges.add((min(a, b), max(a, b)))
        else:
            verts.update(path)
            for a, b in zip(path, path[1:]):
                edges.add((min(a, b), max(a, b)))
    return verts, edges


# -- exact invariants ------------------------------------------------------


def degeneracy(g: Graph) -> int:
    """Smallest d such that every subgraph has a vertex of degree <= d."""
    if g.n == 0:
        return 0
    alive = set(g.vertices())
    deg = {v: g.degree(v) for v in alive}
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return best


def max_average_degree(g: Graph) -> Fraction:
    """Exact maximum of 2|E(H)|/|V(H)| over nonempty subgraphs H.

    Computed by binary search over subgraph densities using max-flow with
    exact rational thresholds, so equality comparisons against bounds such
    as 14/5 are safe.  Only vertex subsets matter: the densest subgraph on
    a given vertex set is always the induced one.
    """
    if g.n < 1:
        raise InvalidParameter("graph must have at least one vertex")
    if g.m == 0:
        return Fraction(0)

    n, m = g.n, g.m
    lo = Fraction(m, n)  # density of the whole graph, always achievable
    hi = Fraction(max(g.degree(v) for v in g.vertices()))
    if hi < lo:
        hi = lo
    gap = Fraction(1, n * n)  # distinct densities e/v differ by >= 1/n^2
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        dense = _denser_than(g, mid)
        if dense is None:
            hi = mid
        else:
            e_count = sum(
                1 for (u, v) in g.edges if u in dense and v in dense
            )
            achieved = Fraction(e_count, len(dense))
            assert achieved > mid, "flow certified a denser subgraph than found"
            lo = achieved
    return 2 * lo


def mad_bruteforce(g: Graph) -> Fraction:
    """Subset brute force for mad; oracle for graphs with <= 16 vertices."""
    if g.n > 16:
        raise InvalidParameter("brute force limited to 16 vertices")
    if g.n < 1:
        raise InvalidParameter("graph must have at least one vertex")
    best = Fraction(0)
    masks = g.adj_bits
    for sub in range(1, 1 << g.n):
        verts = [v for v in g.vertices() if sub >> v & 1]
        e = sum(bin(masks[v] & sub).count("1") for v in verts) // 2
        best = max(best, Fraction(2 * e, len(verts)))
    return best


def _denser_than(g: Graph, density: Fraction) -> Optional[set[int]]:
    """Vertex set of a subgraph with |E|/|V| > density, or None.

    Goldberg-style network: source -> edge node (capacity 1), edge node ->
    endpoints (capacity m), vertex -> sink (capacity ``density``).  The min
    cut equals m - max_W(e(W) - density * |W|), so max flow < m certifies a
    denser-than-threshold subgraph on the source side.
    """
    n, m = g.n, g.m
    src, sink = n + m, n + m + 1
    dinic = _Dinic(n + m + 2)
    big = Fraction(m + 1)
    for i, (u, v) in enumerate(g.edges):
        dinic.add_edge(src, n + i, Fraction(1))
        dinic.add_edge(n + i, u, big)
        dinic.add_edge(n + i, v, big)
    for v in g.vertices():
        dinic.add_edge(v, sink, density)
    flow = dinic.max_flow(src, sink)
    if flow >= Fraction(m):
        return None
    reach = dinic.min_cut_side(src)
    dense = {v for v in g.vertices() if v in reach}
    return dense or None


class _Dinic:
    """Max-flow over exact Fraction capacities (tiny networks only)."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[Fraction] = []

    def add_edge(self, u: int, v: int, c: Fraction) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(Fraction(0))

    def _bfs(self, s: int, t: int) -> Optional[list[int]]:
        level = [-1] * self.n
        level[s] = 0
        queue = [s]
        for u in queue:
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _dfs(self, u: int, t: int, pushed: Fraction, level, it) -> Fraction:
        if u == t:
            return pushed
        while it[u] < len(self.head[u]):
            i = self.head[u][it[u]]
            v = self.to[i]
            if self.cap[i] > 0 and level[v] == level[u] + 1:
                got = self._dfs(v, t, min(pushed, self.cap[i]), level, it)
                if got > 0:
                    self.cap[i] -= got
                    self.cap[i ^ 1] += got
                    return got
            it[u] += 1
        return Fraction(0)

    def max_flow(self, s: int, t: int) -> Fraction:
        total = Fraction(0)
        while True:
            level = self._bfs(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, Fraction(10**18), level, it)
                if pushed <= 0:
                    break
                total += pushed

    def min_cut_side(self, s: int) -> set[int]:
        reach = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and v not in reach:
                    reach.add(v)
                    stack.append(v)
        return reach


# -- connectivity helpers used across modules ------------------------------


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for v in g.vertices():
        if seen[v]:
            continue
        comp, stack = [], [v]
        seen[v] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


# -- serialization ---------------------------------------------------------


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse edge-list or graph6 text into a canonical Graph.

    Edge-list format: first line the vertex count, then one "u v" pair per
    line.  graph6 is the standard 6-bit packed format.  With fmt="auto",
    input whose first token is a decimal integer is treated as edge-list.
    """
    if fmt not in ("auto", "edgelist", "graph6"):
        raise InvalidParameter(f"unknown format {fmt!r}")
    stripped = text.strip()
    if fmt == "auto":
        first = stripped.split(None, 1)[0] if stripped else ""
        fmt = "edgelist" if first.isdigit() else "graph6"
    if fmt == "edgelist":
        return _parse_edgelist(text)
    return parse_graph6(stripped)


def emit_graph(g: Graph) -> str:
    """Canonical edge-list text: vertex count, then sorted "u v" lines."""
    lines = [str(g.n)]
    lines += [f"{u} {v}" for (u, v) in g.edges]
    return "\n".join(lines) + "\n"


def _parse_edgelist(text: str) -> Graph:
    offset = 0
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    for line in text.splitlines(keepends=True):
        content = line.split("#", 1)[0].strip()
        if content:
            fields = content.split()
            if n is None:
                if len(fields) != 1 or not fields[0].isdigit():
                    raise ParseError("expected a vertex count", offset)
                n = int(fields[0])
            else:
                if len(fields) != 2:
                    raise ParseError("expected 'u v'", offset)
                try:
                    u, v = int(fields[0]), int(fields[1])
                except ValueError:
                    raise ParseError("non-integer vertex id", offset) from None
                edges.append((u, v))
        offset += len(line.encode())
    if n is None:
        raise ParseError("empty input", 0)
    try:
        return make_graph(n, edges)
    except (InvalidEdge, DuplicateEdge) as exc:
        raise ParseError(str(exc), 0) from exc


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 string (optionally prefixed with >>graph6<<)."""
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    data = line.strip().encode()
    if not data:
        raise ParseError("empty graph6 input", 0)
    pos = 0
    if data[0] == 126:  # '~' long-form vertex count
        if len(data) < 4:
            raise ParseError("truncated graph6 header", len(data))
        if data[1] == 126:
            raise ParseError("graph6 inputs beyond 258047 vertices unsupported", 1)
        n = 0
        for i in range(1, 4):
            if not (63 <= data[i] <= 126):
                raise ParseError("invalid graph6 byte", i)
            n = (n << 6) | (data[i] - 63)
        pos = 4
    else:
        if not (63 <= data[0] <= 126):
            raise ParseError("invalid graph6 byte", 0)
        n = data[0] - 63
        pos = 1
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos < need:
        raise ParseError("truncated graph6 body", len(data))
    bits = []
    for i in range(pos, pos + need):
        b = data[i]
        if not (63 <= b <= 126):
            raise ParseError("invalid graph6 byte", i)
        bits.extend((b - 63) >> (5 - k) & 1 for k in range(6))
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return make_graph(n, edges)


def emit_graph6(g: Graph) -> str:
    """Encode as a graph6 string (vertex counts up to 258047)."""
    n = g.n
    if n <= 62:
        header = chr(n + 63)
    elif n <= 258047:
        header = "~" + "".join(
            chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0)
        )
    else:
        raise InvalidParameter("graph6 emission limited to 258047 vertices")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = "".join(
        chr(sum(bit << (5 - k) for k, bit in enumerate(bits[i : i + 6])) + 63)
        for i in range(0, len(bits), 6)
    )
    return header + body


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        lines.append(f"  {v};")
    for (u, v) in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
