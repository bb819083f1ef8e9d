"""Source-free orientations of unitrivalent graphs.

An orientation assigns each edge a direction, written as an ordered pair of
its two half-edges.  A valid orientation must

  (i)  point every edge that touches a univalent vertex toward that vertex
       ("leaf edges outward"), and
  (ii) leave no trivalent vertex with all of its arrows outgoing.

Such an orientation exists exactly when the connected graph has a cycle.
On a tree the leaf arrows are all forced and some trivalent vertex ends up
a source; with a cycle present, ``orient`` cuts every non-spanning-tree
edge into a pair of directed stubs — one of the two always points inward —
and floods the spanning tree away from one inward stub, so every vertex
picks up an incoming arrow along the way.  The verifier re-checks (i) and
(ii) independently before anything is returned, and
``count_valid_orientations`` is the brute-force oracle over all ``2^E``
assignments.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import NotOrientable, PreconditionError, ValidationError
from .trees import (
    TRIVALENT,
    UNIVALENT,
    ClasperGraph,
    Half,
    make_graph,
    render_half,
    validate,
)

# edge index -> (tail half, head half)
Orientation = Dict[int, Tuple[Half, Half]]

__all__ = [
    "Orientation",
    "orient",
    "verify_orientation",
    "count_valid_orientations",
    "orientation_to_json",
    "oriented_dot",
    "enumerate_unitrivalent",
]


def _adjacency(g: ClasperGraph) -> Dict[str, List[int]]:
    out: Dict[str, List[int]] = {vid: [] for vid, _ in g.vertices}
    for idx, (a, b) in enumerate(g.edges):
        out[a[0]].append(idx)
        if b[0] != a[0]:
            out[b[0]].append(idx)
    return out


def orient(g: ClasperGraph) -> Orientation:
    """A deterministic valid orientation, or ``NotOrientable`` on a tree.

    Spanning tree by breadth-first search from the lexicographically least
    vertex id; each non-tree edge is directed from its lesser half-edge to
    its greater; the flood starts at the head of the least such inward stub.
    """
    info = validate(g)
    if not info.connected:
        raise ValidationError("graph must be connected")
    if info.is_tree:
        raise NotOrientable("tree: not orientable")

    adjacency = _adjacency(g)
    root = min(vid for vid, _ in g.vertices)
    tree_edges = set()
    seen = {root}
    queue = [root]
    while queue:
        v = queue.pop(0)
        for idx in adjacency[v]:
            a, b = g.edges[idx]
            other = b[0] if a[0] == v else a[0]
            if other not in seen:
                seen.add(other)
                tree_edges.add(idx)
                queue.append(other)

    orientation: Orientation = {}
    inward: List[Tuple[Half, int]] = []
    for idx, (a, b) in enumerate(g.edges):
        if idx in tree_edges:
            continue
        lo, hi = (a, b) if a <= b else (b, a)
        orientation[idx] = (lo, hi)
        inward.append((hi, idx))
    # Cutting a directed non-tree edge leaves an outward stub at its tail
    # and an inward stub at its head; the least head seeds the flood.
    head, _ = min(inward)
    start = head[0]

    queue = [start]
    while queue:
        v = queue.pop(0)
        for idx in adjacency[v]:
            if idx not in tree_edges or idx in orientation:
                continue
            a, b = g.edges[idx]
            tail, head_half = (a, b) if a[0] == v else (b, a)
            orientation[idx] = (tail, head_half)
            queue.append(head_half[0])

    problems = verify_orientation(g, orientation)
    assert not problems, "; ".join(problems)
    return orientation


def verify_orientation(g: ClasperGraph, orientation: Orientation) -> List[str]:
    """Independent re-check of (i) and (ii); returns problems, empty if valid."""
    problems: List[str] = []
    if sorted(orientation) != list(range(len(g.edges))):
        problems.append("orientation must direct every edge exactly once")
        return problems
    arity = g.arity_map()
    incoming = {vid: 0 for vid, _ in g.vertices}
    for idx, (tail, head) in orientation.items():
        a, b = g.edges[idx]
        if (tail, head) not in ((a, b), (b, a)):
            problems.append("edge %d directed between foreign half-edges" % idx)
            continue
        incoming[head[0]] += 1
        if arity[tail[0]] == UNIVALENT:
            problems.append("leaf edge %d points away from its leaf" % idx)
    for vid, a in g.vertices:
        if a == TRIVALENT and incoming[vid] == 0:
            problems.append("trivalent vertex %r is a source" % vid)
    return problems


def count_valid_orientations(g: ClasperGraph) -> int:
    """Brute-force count of valid orientations over all ``2^E`` assignments."""
    info = validate(g)
    if not info.connected:
        raise ValidationError("graph must be connected")
    n_edges = len(g.edges)
    if n_edges > 16:
        raise PreconditionError(
            "count_valid_orientations: %d edges exceeds the bound of 16" % n_edges
        )
    count = 0
    for mask in range(1 << n_edges):
        orientation = {
            idx: ((a, b) if not mask >> idx & 1 else (b, a))
            for idx, (a, b) in enumerate(g.edges)
        }
        if not verify_orientation(g, orientation):
            count += 1
    return count


def orientation_to_json(orientation: Orientation) -> Dict[str, str]:
    return {
        str(idx): "%s->%s" % (render_half(tail), render_half(head))
        for idx, (tail, head) in sorted(orientation.items())
    }


def oriented_dot(g: ClasperGraph, orientation: Orientation) -> str:
    lines = ["digraph clasper {"]
    for vid, a in g.vertices:
        shape = "point" if a == TRIVALENT else "circle"
        lines.append('  "%s" [shape=%s];' % (vid, shape))
    for idx in sorted(orientation):
        tail, head = orientation[idx]
        lines.append(
            '  "%s" -> "%s" [label="e%d", taillabel="%d", headlabel="%d"];'
            % (tail[0], head[0], idx, tail[1], head[1])
        )
    lines.append("}")
    return "\n".join(lines)


def _connected_internal(t: int, mults: Dict[Tuple[int, int], int]) -> bool:
    parent = list(range(t))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (a, b), m in mults.items():
        if m and a != b:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(v) for v in range(t)}) == 1


def _assemble_graph(t: int, mults: Dict[Tuple[int, int], int]) -> ClasperGraph:
    vertices = {"t%d" % i: TRIVALENT for i in range(t)}
    next_slot = [0] * t
    edges = []
    for (a, b) in sorted(mults):
        for _ in range(mults[(a, b)]):
            ha = ("t%d" % a, next_slot[a])
            next_slot[a] += 1
            hb = ("t%d" % b, next_slot[b])
            next_slot[b] += 1
            edges.append((ha, hb))
    labels = {}
    leaf = 0
    for i in range(t):
        while next_slot[i] < 3:
            lid = "l%d" % leaf
            vertices[lid] = UNIVALENT
            labels[lid] = (1,)
            edges.append((("t%d" % i, next_slot[i]), (lid, 0)))
            next_slot[i] += 1
            leaf += 1
    return make_graph(1, vertices, edges, labels)


def enumerate_unitrivalent(max_trivalent: int) -> Iterator[ClasperGraph]:
    """Every connected unitrivalent multigraph with 1..max_trivalent labeled
    trivalent vertices: all loop/multi-edge patterns with internal degree at
    most 3, remaining slots filled by leaves (dummy labels over n=1)."""
    if max_trivalent < 1:
        raise PreconditionError("enumerate_unitrivalent: need max_trivalent >= 1")
    for t in range(1, max_trivalent + 1):
        pairs = [(i, j) for i in range(t) for j in range(i, t)]
        deg = [0] * t

        def rec(i: int, out: Dict[Tuple[int, int], int]) -> Iterator[Dict]:
            if i == len(pairs):
                yield dict(out)
                return
            a, b = pairs[i]
            if a == b:
                limit = 1 if deg[a] + 2 <= 3 else 0
            else:
                limit = min(3 - deg[a], 3 - deg[b])
            for m in range(limit + 1):
                bump = 2 * m if a == b else m
                deg[a] += bump
                if a != b:
                    deg[b] += m
                out[(a, b)] = m
                yield from rec(i + 1, out)
                deg[a] -= bump
                if a != b:
                    deg[b] -= m
            del out[(a, b)]

        for mults in rec(0, {}):
            if _connected_internal(t, mults):
                yield _assemble_graph(t, mults)
