"""Proper colorings, list colorings, and the desk-scale choosability decider.

Colorings are tuples indexed by vertex; list assignments are dicts mapping
each vertex to a frozenset of positive integers.  Everything here is pure
and deterministic: failure witnesses are the first bad assignment in the
canonical enumeration order, so golden outputs are stable.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

from .errors import DuplicateVertex, InvalidParameter, TooLarge
from .graphs import Graph

Coloring = tuple  # color of vertex v at index v
ListAssignment = dict  # vertex -> frozenset of colors

ENUM_VERTEX_GUARD = 24
CHOOSE_VERTEX_GUARD = 8
CHOOSE_CAP_SUM_GUARD = 20


def enumerate_proper_colorings(g: Graph, k: int) -> Iterator[Coloring]:
    """Yield every proper coloring with colors in 1..k, lexicographically."""
    if k < 1:
        raise InvalidParameter("need at least one color")
    if g.n > ENUM_VERTEX_GUARD:
        raise TooLarge(f"coloring enumeration guarded at {ENUM_VERTEX_GUARD} vertices")
    colors = [0] * g.n

    def extend(v: int) -> Iterator[Coloring]:
        if v == g.n:
            yield tuple(colors)
            return
        for c in range(1, k + 1):
            if all(colors[w] != c for w in g.neighbors(v) if w < v):
                colors[v] = c
                yield from extend(v + 1)
        colors[v] = 0

    yield from extend(0)


def find_L_coloring(g: Graph, lists: ListAssignment) -> Optional[dict]:
    """A proper coloring from the lists, or None; smallest colors first."""
    pool = [sorted(lists[v]) for v in g.vertices()]
    chosen: dict[int, int] = {}

    def extend(v: int) -> bool:
        if v == g.n:
            return True
        for c in pool[v]:
            if all(chosen.get(w) != c for w in g.neighbors(v) if w < v):
                chosen[v] = c
                if extend(v + 1):
                    return True
                del chosen[v]
        return False

    return dict(chosen) if extend(0) else None


def extendability_capacity(g: Graph, anchors: Sequence[tuple[int, int]]) -> dict:
    """Capacity map equal to a_i on each anchor vertex and 3 elsewhere."""
    caps = {v: 3 for v in g.vertices()}
    seen = set()
    for (v, a) in anchors:
        if v in seen:
            raise DuplicateVertex(f"anchor vertex {v} repeated")
        if not (0 <= v < g.n):
            raise InvalidParameter(f"anchor vertex {v} out of range")
        if a not in (1, 2):
            raise InvalidParameter(f"anchor capacity must be 1 or 2, got {a}")
        seen.add(v)
        caps[v] = a
    return caps


def is_f_choosable(
    g: Graph, caps: dict
) -> tuple[bool, Optional[ListAssignment]]:
    """Decide whether every size-respecting list assignment is colorable.

    Colors are drawn from 1..sum(f): a bad assignment never needs more
    distinct colors than it has list slots.  Enumeration is canonical;
    processing vertices in index order, a list may introduce new colors
    only as the smallest integers not yet used, which collapses the
    color-renaming symmetry.  Returns (True, None) or (False, witness).

    Two sound cuts keep this tractable.  Vertices with capacity exceeding
    their degree are removed up front (they can always be colored last,
    and a bad assignment on the rest extends by fresh colors).  During
    enumeration a prefix is skipped once some coloring of the assigned
    part extends greedily no matter which lists the remaining vertices
    receive.
    """
    from .orientations import validate_caps

    validate_caps(g, caps)
    if g.n > CHOOSE_VERTEX_GUARD or sum(caps.values()) > CHOOSE_CAP_SUM_GUARD:
        raise TooLarge(
            f"choosability guarded at {CHOOSE_VERTEX_GUARD} vertices "
            f"and capacity sum {CHOOSE_CAP_SUM_GUARD}"
        )

    # peel vertices that can always be colored last
    alive = set(g.vertices())
    deg = {v: g.degree(v) for v in alive}
    order_removed = []
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if caps[v] > deg[v]:
                alive.remove(v)
                order_removed.append(v)
                for w in g.neighbors(v):
                    if w in alive:
                        deg[w] -= 1
                changed = True
                break
    if not alive:
        return True, None

    verts = sorted(alive)
    sizes = [caps[v] for v in verts]
    universe = sum(sizes)
    adj_in_core = {
        v: [w for w in g.neighbors(v) if w in alive] for v in verts
    }
    core_index = {v: i for i, v in enumerate(verts)}

    lists: list[frozenset] = []

    def colorable_core(assign: list[frozenset]) -> bool:
        chosen: dict[int, int] = {}

        def extend(i: int) -> bool:
            if i == len(verts):
                return True
            v = verts[i]
            for c in sorted(assign[i]):
                if all(
                    chosen.get(core_index[w]) != c
                    for w in adj_in_core[v]
                    if core_index[w] < i
                ):
                    chosen[i] = c
                    if extend(i + 1):
                        return True
                    del chosen[i]
            return False

        return extend(0)

    def greedy_safe(prefix_len: int) -> bool:
        """True when some coloring of the prefix survives any future lists."""
        future = verts[prefix_len:]
        fut_set = set(future)

        def peelable(colored: dict[int, int]) -> bool:
            fdeg = {
                w: sum(1 for x in adj_in_core[w] if x in fut_set) for w in future
            }
            slack = {
                w: caps[w]
                - len(
                    {
                        colored[core_index[x]]
                        for x in adj_in_core[w]
                        if core_index[x] < prefix_len
                    }
                )
                for w in future
            }
            remaining = set(future)
            progress = True
            while remaining and progress:
                progress = False
                for w in sorted(remaining):
                    if slack[w] > fdeg[w]:
                        remaining.remove(w)
                        for x in adj_in_core[w]:
                            if x in remaining:
                                fdeg[x] -= 1
                        progress = True
                        break
            return not remaining

        chosen: dict[int, int] = {}

        def extend(i: int) -> bool:
            if i == prefix_len:
                return peelable(chosen)
            v = verts[i]
            for c in sorted(lists[i]):
                if all(
                    chosen.get(core_index[w]) != c
                    for w in adj_in_core[v]
                    if core_index[w] < i
                ):
                    chosen[i] = c
                    if extend(i + 1):
                        return True
                    del chosen[i]
            return False

        return extend(0)

    from itertools import combinations

    def enumerate_lists(i: int, used: int) -> Optional[list[frozenset]]:
        if i == len(verts):
            if colorable_core(lists):
                return None
            return list(lists)
        if greedy_safe(i):
            return None
        size = sizes[i]
        for fresh in range(size + 1):
            if used + fresh > universe:
                break
            new_colors = tuple(range(used + 1, used + fresh + 1))
            for old in combinations(range(1, used + 1), size - fresh):
                lists.append(frozenset(old + new_colors))
                bad = enumerate_lists(i + 1, used + fresh)
                if bad is not None:
                    return bad
                lists.pop()
        return None

    bad_core = enumerate_lists(0, 0)
    if bad_core is None:
        return True, None

    witness: ListAssignment = {v: bad_core[i] for i, v in enumerate(verts)}
    # removed vertices get fresh colors so the witness stays uncolorable
    nxt = universe + 1
    for v in order_removed:
        witness[v] = frozenset(range(nxt, nxt + caps[v]))
        nxt += caps[v]
    return False, witness


def has_unique_3_coloring(g: Graph) -> bool:
    """True when all proper 3-colorings form one orbit under color renaming."""
    if g.n > ENUM_VERTEX_GUARD:
        raise TooLarge(f"guarded at {ENUM_VERTEX_GUARD} vertices")
    orbits = set()
    for phi in enumerate_proper_colorings(g, 3):
        rename: dict[int, int] = {}
        canon = []
        for c in phi:
            if c not in rename:
                rename[c] = len(rename) + 1
            canon.append(rename[c])
        orbits.add(tuple(canon))
        if len(orbits) > 1:
            return False
    return len(orbits) == 1


def corollary_witness_assignments(
    g: Graph, kind: str, vertices: Sequence[int]
) -> list[ListAssignment]:
    """The literal list assignments used in the equivalence arguments.

    kind "cor4" on (x, y): L(x) = {1,2}, L(y) = {3}.
    kind "cor8-first" on (x, y, z): all three get {1,2}.
    kind "cor8-second" on (x, y, z): {1,2}, {1,3}, {2,3}.
    Everything else receives {1,2,3}.
    """
    arities = {"cor4": 2, "cor8-first": 3, "cor8-second": 3}
    if kind not in arities:
        raise InvalidParameter(f"unknown witness kind {kind!r}")
    if len(vertices) != arities[kind] or len(set(vertices)) != len(vertices):
        raise InvalidParameter(f"{kind} needs {arities[kind]} distinct vertices")
    base: ListAssignment = {v: frozenset({1, 2, 3}) for v in g.vertices()}
    if kind == "cor4":
        x, y = vertices
        base[x] = frozenset({1, 2})
        base[y] = frozenset({3})
    elif kind == "cor8-first":
        for v in vertices:
            base[v] = frozenset({1, 2})
    else:
        x, y, z = vertices
        base[x] = frozenset({1, 2})
        base[y] = frozenset({1, 3})
        base[z] = frozenset({2, 3})
    return [base]


def lists_to_json(lists: ListAssignment) -> dict:
    return {"lists": {str(v): sorted(cs) for v, cs in sorted(lists.items())}}
