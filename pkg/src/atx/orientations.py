"""Orientations, exact Eulerian parity counts, and capped orientation search.

An orientation assigns a direction to every edge instance of a Graph or
MultiGraph.  diff(D) counts spanning Eulerian sub-digraphs (arc subsets that
are in/out balanced at every vertex, connectivity not required, the empty
set included) split by arc parity.  An orientation with diff != 0 certifies
f-choosability whenever its out-degrees stay below the capacities, which is
what every constructive routine in this package ultimately produces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from . import structure
from .errors import (
    AlreadyDirected,
    ContractViolation,
    InvalidInput,
    InvalidParameter,
    NotACutVertex,
    PatternMismatch,
    TooLarge,
)
from .graphs import Graph, MultiGraph, is_connected, make_graph


@dataclass(frozen=True)
class DiffResult:
    """Counts of even/odd Eulerian sub-digraphs and their difference."""

    even: int
    odd: int

    @property
    def diff(self) -> int:
        return self.even - self.odd

    def to_json(self) -> dict:
        return {"even": self.even, "odd": self.odd, "diff": self.diff}


class Orientation:
    """A direction for every edge instance of a (Multi)Graph.

    ``arcs[i]`` is the (tail, head) pair for edge instance i of the base.
    Loops appear as (v, v) and contribute one to both degrees.
    """

    __slots__ = ("base", "arcs", "out_deg", "in_deg")

    def __init__(self, base: Union[Graph, MultiGraph], arcs: Sequence[tuple[int, int]]):
        instances = base.edges if isinstance(base, Graph) else base.instances
        if len(arcs) != len(instances):
            raise InvalidInput("need exactly one direction per edge instance")
        for (t, h), (u, v) in zip(arcs, instances):
            if {t, h} != {u, v} and not (u == v and t == h == u):
                raise InvalidInput(f"arc ({t},{h}) does not direct edge ({u},{v})")
        self.base = base
        self.arcs = tuple((t, h) for (t, h) in arcs)
        out = [0] * base.n
        inn = [0] * base.n
        for (t, h) in self.arcs:
            out[t] += 1
            inn[h] += 1
        self.out_deg = tuple(out)
        self.in_deg = tuple(inn)

    def reversed(self) -> "Orientation":
        return Orientation(self.base, [(h, t) for (t, h) in self.arcs])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Orientation)
            and self.base == other.base
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        # Graph hashes by value, MultiGraph by identity; both match __eq__
        return hash((self.base, self.arcs))

    def __repr__(self) -> str:
        return f"Orientation({self.arcs})"


def orient(g: Graph, arcs: Iterable[tuple[int, int]]) -> Orientation:
    """Build an Orientation from arcs given in any order."""
    want = {}
    for (t, h) in arcs:
        key = (min(t, h), max(t, h))
        if key in want:
            raise AlreadyDirected(f"edge {key} directed twice")
        want[key] = (t, h)
    missing = [e for e in g.edges if e not in want]
    if missing:
        raise InvalidInput(f"edges {missing} left undirected")
    if len(want) != g.m:
        extra = [e for e in want if e not in set(g.edges)]
        raise InvalidInput(f"arcs over non-edges {extra}")
    return Orientation(g, [want[e] for e in g.edges])


class PartialOrientation:
    """Mutable builder: direct edges one rule at a time, then finalize."""

    def __init__(self, g: Graph):
        self.g = g
        self.direction: list[Optional[tuple[int, int]]] = [None] * g.m

    def orient_edge(self, tail: int, head: int) -> None:
        i = self.g.edge_index(tail, head)
        if self.direction[i] is not None:
            raise AlreadyDirected(f"edge ({tail},{head}) already directed")
        self.direction[i] = (tail, head)

    def orient_rest_out(self, v: int) -> None:
        """Direct all of v's edges out of v; they must all be undecided."""
        idxs = [self.g.edge_index(v, w) for w in self.g.neighbors(v)]
        for i in idxs:
            if self.direction[i] is not None:
                raise AlreadyDirected(f"an edge at vertex {v} is already directed")
        for w in self.g.neighbors(v):
            self.direction[self.g.edge_index(v, w)] = (v, w)

    def is_complete(self) -> bool:
        return all(d is not None for d in self.direction)

    def finalize(self) -> Orientation:
        if not self.is_complete():
            raise InvalidInput("orientation incomplete")
        return Orientation(self.g, [d for d in self.direction])  # type: ignore[misc]


def orient_rest_out(partial: PartialOrientation, v: int) -> PartialOrientation:
    """Functional wrapper for PartialOrientation.orient_rest_out."""
    partial.orient_rest_out(v)
    return partial


# -- diff ------------------------------------------------------------------


def compute_diff(d: Orientation) -> DiffResult:
    """Count even and odd Eulerian sub-digraphs of d exactly.

    Depth-first over arcs in a fixed order, carrying per-vertex imbalance
    (out minus in among chosen arcs) and pruning any branch where some
    vertex's imbalance exceeds the number of its still-undecided incident
    arcs.  Loops never change imbalance and are skipped by the prune
    bookkeeping.
    """
    arcs = d.arcs
    n = d.base.n
    # process arcs touching low-connectivity vertices last: sorting by
    # min endpoint degree descending closes busy vertices early
    deg = [d.out_deg[v] + d.in_deg[v] for v in range(n)]
    order = sorted(range(len(arcs)), key=lambda i: (-min(deg[arcs[i][0]], deg[arcs[i][1]]), i))
    seq = [arcs[i] for i in order]
    m = len(seq)
    # remaining non-loop incidences strictly after position i
    rem = [[0] * n for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row = rem[i]
        nxt = rem[i + 1]
        for v in range(n):
            row[v] = nxt[v]
        t, h = seq[i]
        if t != h:
            row[t] += 1
            row[h] += 1
    counts = [0, 0]  # even, odd
    imb = [0] * n

    def walk(i: int, parity: int) -> None:
        if i == m:
            counts[parity] += 1
            return
        t, h = seq[i]
        nxt = rem[i + 1]
        # exclude arc i
        if abs(imb[t]) <= nxt[t] and abs(imb[h]) <= nxt[h]:
            walk(i + 1, parity)
        # include arc i
        if t == h:
            walk(i + 1, parity ^ 1)
            return
        imb[t] += 1
        imb[h] -= 1
        if abs(imb[t]) <= nxt[t] and abs(imb[h]) <= nxt[h]:
            walk(i + 1, parity ^ 1)
        imb[t] -= 1
        imb[h] += 1

    walk(0, 0)
    return DiffResult(even=counts[0], odd=counts[1])


def coefficient_oracle(d: Orientation) -> int:
    """|coefficient| of the out-degree monomial in the graph polynomial.

    Expands prod over edges (u,v), u < v, of (x_u - x_v) as a sparse
    exponent-vector map and reads off the coefficient of
    prod_v x_v^{outdeg(v)}.  Independent of compute_diff; the two must
    agree in absolute value on simple graphs.
    """
    if not isinstance(d.base, Graph):
        raise InvalidInput("the polynomial oracle is defined for simple graphs")
    g = d.base
    target = d.out_deg
    poly: dict[tuple[int, ...], int] = {(0,) * g.n: 1}
    for (u, v) in g.edges:
        nxt: dict[tuple[int, ...], int] = {}
        for mono, coef in poly.items():
            for raised, sign in ((u, 1), (v, -1)):
                if mono[raised] == target[raised]:
                    continue  # exponents only grow; overshoot is dead
                key = mono[:raised] + (mono[raised] + 1,) + mono[raised + 1 :]
                nxt[key] = nxt.get(key, 0) + sign * coef
        poly = {k: c for k, c in nxt.items() if c}
    return abs(poly.get(tuple(target), 0))


# -- capped orientation search ----------------------------------------------


@dataclass(frozen=True)
class ATCertificate:
    """Self-verifying output: orientation, capacities it satisfies, parity.

    Invariants: outdeg(v) <= caps[v] - 1 everywhere and diff != 0; the diff
    result is recomputable from the orientation.
    """

    orientation: Orientation
    caps: dict
    diff_result: DiffResult

    def to_json(self) -> dict:
        return {
            "arcs": [list(a) for a in self.orientation.arcs],
            "caps": {str(v): c for v, c in sorted(self.caps.items())},
            "even": self.diff_result.even,
            "odd": self.diff_result.odd,
            "diff": self.diff_result.diff,
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def check_certificate(cert: ATCertificate) -> bool:
    """Recompute everything the certificate claims."""
    fresh = compute_diff(cert.orientation)
    if (fresh.even, fresh.odd) != (cert.diff_result.even, cert.diff_result.odd):
        return False
    if fresh.diff == 0:
        return False
    n = cert.orientation.base.n
    if sorted(cert.caps) != list(range(n)):
        return False
    return all(cert.orientation.out_deg[v] <= cert.caps[v] - 1 for v in range(n))


def validate_caps(g: Graph, caps: dict) -> None:
    if sorted(caps) != list(range(g.n)):
        raise InvalidParameter("capacity map must cover every vertex exactly once")
    if any(c < 1 for c in caps.values()):
        raise InvalidParameter("capacities must be positive")


def is_f_AT(g: Graph, caps: dict) -> Optional[ATCertificate]:
    """First orientation with outdeg(v) <= caps[v]-1 and diff != 0, if any.

    Deterministic: edges are decided in canonical order, lower tail first,
    so repeated runs return the identical certificate.
    """
    validate_caps(g, caps)
    budget = [caps[v] - 1 for v in g.vertices()]
    if sum(budget) < g.m:
        return None
    chosen: list[tuple[int, int]] = []
    out = [0] * g.n

    def search(i: int) -> Optional[Orientation]:
        if i == g.m:
            o = Orientation(g, chosen)
            if compute_diff(o).diff != 0:
                return o
            return None
        u, v = g.edges[i]
        for (t, h) in ((u, v), (v, u)):
            if out[t] < budget[t]:
                out[t] += 1
                chosen.append((t, h))
                found = search(i + 1)
                if found is not None:
                    return found
                chosen.pop()
                out[t] -= 1
        return None

    o = search(0)
    if o is None:
        return None
    return ATCertificate(o, dict(caps), compute_diff(o))


def alon_tarsi_number(g: Graph) -> int:
    """Least k such that the graph is k-AT (constant capacity search)."""
    if g.m > 24:
        raise TooLarge("Alon-Tarsi number search guarded at 24 edges")
    k = 1
    while True:
        if is_f_AT(g, {v: k for v in g.vertices()}) is not None:
            return k
        k += 1


def degree_AT_orientation(g: Graph) -> Optional[ATCertificate]:
    """Orientation with caps deg(v) and every in-degree >= 1, if one exists.

    Connected non-Gallai-tree graphs always admit one; Gallai trees never
    do, so the search is skipped for them.  Meant for small kernels only.
    """
    if g.n > 12:
        raise TooLarge("degree-AT search guarded at 12 vertices")
    if not is_connected(g):
        raise InvalidInput("degree-AT orientation requires a connected graph")
    if structure.is_gallai_tree(g):
        return None
    caps = {v: max(g.degree(v), 1) for v in g.vertices()}
    cert = is_f_AT(g, caps)
    if cert is None:
        raise ContractViolation("non-Gallai-tree graph without a degree-AT orientation")
    # outdeg <= deg-1 is exactly indeg >= 1
    assert all(
        cert.orientation.in_deg[v] >= 1 for v in g.vertices() if g.degree(v) > 0
    )
    return cert


# -- composition laws --------------------------------------------------------


def glue_at_cutvertex(
    d1: Orientation, d2: Orientation, shared: Sequence[tuple[int, int]]
) -> Orientation:
    """Amalgamate two orientations over a single identified vertex.

    ``shared`` lists (vertex of d1, vertex of d2) identification pairs;
    exactly one pair is allowed, otherwise the identified vertex would not
    separate the union.  The result's diff is the product of the parts'.
    """
    if len(shared) != 1:
        raise NotACutVertex("bases must share exactly one vertex")
    if not isinstance(d1.base, Graph) or not isinstance(d2.base, Graph):
        raise InvalidInput("gluing is defined for simple graph orientations")
    (a1, a2) = shared[0]
    g1: Graph = d1.base
    g2: Graph = d2.base
    if not (0 <= a1 < g1.n and 0 <= a2 < g2.n):
        raise InvalidParameter("shared vertex out of range")
    remap = {}
    nxt = g1.n
    for v in range(g2.n):
        if v == a2:
            remap[v] = a1
        else:
            remap[v] = nxt
            nxt += 1
    edges = list(g1.edges) + [(remap[u], remap[v]) for (u, v) in g2.edges]
    glued = make_graph(g1.n + g2.n - 1, edges)
    arcs = list(d1.arcs) + [(remap[t], remap[h]) for (t, h) in d2.arcs]
    return orient(glued, arcs)


def triangle_reduce_check(d: Orientation, u1: int, u2: int, u3: int, u4: int) -> bool:
    """Tested identity: deleting the oriented triangle handle keeps diff.

    Requires the pattern: triangle [u1 u2 u3], deg(u1) = 2, deg(u2) = 3
    with N(u2) = {u1, u3, u4}, and arcs (u1,u3), (u2,u1), (u2,u3), (u4,u2).
    Returns whether diff(d) equals diff of d restricted to the graph minus
    {u1, u2}; the pattern guarantees it does.
    """
    if not isinstance(d.base, Graph):
        raise PatternMismatch("pattern check defined on simple graphs")
    g: Graph = d.base
    distinct = len({u1, u2, u3, u4}) == 4
    if not distinct:
        raise PatternMismatch("u1..u4 must be distinct")
    if not (g.has_edge(u1, u2) and g.has_edge(u2, u3) and g.has_edge(u1, u3)):
        raise PatternMismatch("[u1 u2 u3] must be a triangle")
    if g.degree(u1) != 2:
        raise PatternMismatch("u1 must be a 2-vertex")
    if g.degree(u2) != 3 or set(g.neighbors(u2)) != {u1, u3, u4}:
        raise PatternMismatch("u2 must be a 3-vertex with neighbors u1,u3,u4")
    want = {(u1, u3), (u2, u1), (u2, u3), (u4, u2)}
    have = {a for a in d.arcs if set(a) & {u1, u2}}
    if have != want:
        raise PatternMismatch("arcs at u1,u2 must be (u1,u3),(u2,u1),(u2,u3),(u4,u2)")

    from .graphs import delete_vertices  # local to avoid import noise at top

    sub, remap = delete_vertices(g, {u1, u2})
    sub_arcs = [
        (remap[t], remap[h]) for (t, h) in d.arcs if u1 not in (t, h) and u2 not in (t, h)
    ]
    reduced = orient(sub, sub_arcs)
    return compute_diff(d).diff == compute_diff(reduced).diff


def restrict(d: Orientation, keep: Iterable[int]) -> Orientation:
    """Orientation induced on a vertex subset (arcs with both ends kept)."""
    if not isinstance(d.base, Graph):
        raise InvalidInput("restriction defined on simple graph orientations")
    from .graphs import delete_vertices

    keep_set = set(keep)
    gone = [v for v in d.base.vertices() if v not in keep_set]
    sub, remap = delete_vertices(d.base, gone)
    arcs = [(remap[t], remap[h]) for (t, h) in d.arcs if t in keep_set and h in keep_set]
    return orient(sub, arcs)


def orientation_to_dot(d: Orientation, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(d.base.n):
        lines.append(f"  {v};")
    for (t, h) in d.arcs:
        lines.append(f"  {t} -> {h};")
    lines.append("}")
    return "\n".join(lines) + "\n"
