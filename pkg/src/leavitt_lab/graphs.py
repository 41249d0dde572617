"""Finite directed multigraphs and their structural predicates.

Everything downstream works over a finite directed graph with parallel
edges and loops allowed.  Vertices are opaque strings; the declaration
order fixed at construction is the canonical order used for element
serialization, matrix rows, subset enumeration, and report layout.
Graphs are immutable values: every constructor returns a fresh graph and
never mutates its input.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "Graph",
    "GraphError",
    "DuplicateVertexError",
    "DanglingEdgeError",
    "InvalidParameterError",
    "UnknownVertexError",
    "VertexNotOnCycleError",
    "GraphTooLargeError",
    "build_graph",
    "rose_graph",
    "matrix_graph",
    "cuntz_splice",
    "simple_cycles",
    "cycle_vertices",
    "cycle_has_exit",
    "vertices_on_cycles",
    "every_vertex_connects_to_cycle",
    "hereditary_saturated_subsets",
    "nontrivial_hereditary_saturated",
    "is_hereditary",
    "is_saturated",
    "same_labeled_graph",
    "graph_to_json",
    "graph_from_json",
    "SUBSET_ENUMERATION_CAP",
]

# Subset enumeration walks all 2^n vertex subsets; past this many vertices
# the walk is refused rather than silently taking hours.
SUBSET_ENUMERATION_CAP = 20


class GraphError(Exception):
    """Base class for graph construction and lookup failures."""


class DuplicateVertexError(GraphError):
    """A vertex id was declared more than once."""


class DanglingEdgeError(GraphError):
    """An edge endpoint names a vertex that was never declared."""


class InvalidParameterError(GraphError):
    """A generator parameter is outside its documented domain."""


class UnknownVertexError(GraphError):
    """A vertex id was referenced that the graph does not contain."""


class VertexNotOnCycleError(GraphError):
    """The Cuntz splice needs a base vertex that lies on a cycle."""


class GraphTooLargeError(GraphError):
    """The requested exhaustive enumeration exceeds the documented cap."""


@dataclass(frozen=True)
class Graph:
    """Immutable directed multigraph.

    ``vertices`` fixes the canonical vertex order.  ``edges`` holds
    (source, range) pairs; repeated pairs encode parallel edges, and an
    edge's id is its position in the tuple.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((s, r) for (s, r) in self.edges))
        seen: set[str] = set()
        for v in self.vertices:
            if v in seen:
                raise DuplicateVertexError(f"vertex {v!r} is declared twice")
            seen.add(v)
        for eid, (src, rng) in enumerate(self.edges):
            if src not in seen:
                raise DanglingEdgeError(
                    f"edge #{eid} ({src!r} -> {rng!r}): source {src!r} is not a declared vertex"
                )
            if rng not in seen:
                raise DanglingEdgeError(
                    f"edge #{eid} ({src!r} -> {rng!r}): range {rng!r} is not a declared vertex"
                )

    # -- canonical order helpers -------------------------------------------

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _out_edge_ids(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in self.vertices]
        for eid, (src, _) in enumerate(self.edges):
            buckets[self._index[src]].append(eid)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def _out_range_indices(self) -> tuple[tuple[int, ...], ...]:
        # range vertex indices for each vertex's out-edges, edge-id order
        return tuple(
            tuple(self._index[self.edges[eid][1]] for eid in ids)
            for ids in self._out_edge_ids
        )

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise UnknownVertexError(f"no vertex {vertex!r} in graph") from None

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._index

    def out_edge_ids(self, vertex: str) -> tuple[int, ...]:
        return self._out_edge_ids[self.index(vertex)]

    def out_degree(self, vertex: str) -> int:
        return len(self._out_edge_ids[self.index(vertex)])

    def edge_source(self, edge_id: int) -> str:
        return self.edges[edge_id][0]

    def edge_range(self, edge_id: int) -> str:
        return self.edges[edge_id][1]

    def is_sink(self, vertex: str) -> bool:
        return not self._out_edge_ids[self.index(vertex)]

    def sinks(self) -> tuple[str, ...]:
        """Vertices with no outgoing edge, in canonical order."""
        return tuple(v for v in self.vertices if not self._out_edge_ids[self._index[v]])

    def regular_vertices(self) -> tuple[str, ...]:
        """Vertices with at least one outgoing edge, in canonical order."""
        return tuple(v for v in self.vertices if self._out_edge_ids[self._index[v]])


def build_graph(vertices, edges) -> Graph:
    """Validate and freeze a (vertices, edges) description into a Graph."""
    return Graph(tuple(vertices), tuple((s, r) for (s, r) in edges))


def rose_graph(n: int, vertex: str = "u") -> Graph:
    """Single vertex with ``n`` loops.

    n = 0 is the isolated vertex, n = 1 a single loop, n >= 2 the rose
    whose Leavitt path algebra is L_n.
    """
    if n < 0:
        raise InvalidParameterError(f"rose graph needs n >= 0, got {n}")
    return Graph((vertex,), tuple((vertex, vertex) for _ in range(n)))


def matrix_graph(d: int, n: int, source: str = "u", target: str = "v") -> Graph:
    """Two vertices: d - 1 edges from source to target and n loops at target.

    The graph monoid identifies the source with (d-1) copies of the
    target, so this presents the d x d matrix algebra over L_n.  Both
    parameters must be at least 2.
    """
    if d < 2 or n < 2:
        raise InvalidParameterError(f"matrix graph needs d >= 2 and n >= 2, got d={d}, n={n}")
    edges = [(source, target)] * (d - 1) + [(target, target)] * n
    return Graph((source, target), tuple(edges))


def cuntz_splice(g: Graph, at: str, new_vertices: tuple[str, str] | None = None) -> Graph:
    """Attach the two-vertex splice gadget at a vertex lying on a cycle.

    Adds fresh vertices v1, v2 and exactly the six edges
    at -> v1, v1 -> at, v1 -> v2, v2 -> v1, v1 -> v1, v2 -> v2.
    Fresh names default to "v" and "w" when free (the conventional labels
    for the spliced E2), then fall back to v1/w1, v2/w2, ...
    """
    base = g.index(at)  # raises UnknownVertexError for a missing vertex
    if base not in _cycle_vertex_indices(g):
        raise VertexNotOnCycleError(f"vertex {at!r} does not lie on a cycle")
    if new_vertices is None:
        fresh = []
        for name in _fresh_name_candidates():
            if not g.has_vertex(name) and name not in fresh:
                fresh.append(name)
            if len(fresh) == 2:
                break
        v1, v2 = fresh
    else:
        v1, v2 = new_vertices
        if g.has_vertex(v1) or g.has_vertex(v2) or v1 == v2:
            raise DuplicateVertexError(f"splice vertices {v1!r}, {v2!r} collide")
    spliced_edges = g.edges + (
        (at, v1),
        (v1, at),
        (v1, v2),
        (v2, v1),
        (v1, v1),
        (v2, v2),
    )
    return Graph(g.vertices + (v1, v2), spliced_edges)


def _fresh_name_candidates():
    yield "v"
    yield "w"
    i = 1
    while True:
        yield f"v{i}"
        yield f"w{i}"
        i += 1


# -- cycles ----------------------------------------------------------------


def simple_cycles(g: Graph) -> tuple[tuple[int, ...], ...]:
    """All simple cycles as tuples of edge ids.

    A simple cycle visits pairwise distinct vertices; parallel edges give
    distinct cycles.  Each cycle is rotated to start at its smallest
    vertex, and the enumeration order (by start vertex, then depth-first
    edge order) is deterministic.
    """
    cycles: list[tuple[int, ...]] = []
    path: list[int] = []

    def extend(start: int, current: int, visited: set[int]) -> None:
        for eid in g._out_edge_ids[current]:
            target = g._index[g.edges[eid][1]]
            if target == start:
                cycles.append(tuple(path + [eid]))
            elif target > start and target not in visited:
                path.append(eid)
                visited.add(target)
                extend(start, target, visited)
                visited.discard(target)
                path.pop()

    for start in range(g.n_vertices):
        extend(start, start, {start})
    return tuple(cycles)


def cycle_vertices(g: Graph, cycle: tuple[int, ...]) -> tuple[str, ...]:
    """The vertices a cycle passes through, in traversal order."""
    return tuple(g.edges[eid][0] for eid in cycle)


def cycle_has_exit(g: Graph, cycle: tuple[int, ...]) -> bool:
    """True when some vertex of the cycle has an out-edge other than the
    cycle's own edge there.  A parallel copy of a cycle edge counts."""
    for eid in cycle:
        src = g._index[g.edges[eid][0]]
        for other in g._out_edge_ids[src]:
            if other != eid:
                return True
    return False


def _cycle_vertex_indices(g: Graph) -> frozenset[int]:
    # a vertex lies on a cycle iff it reaches itself through >= 1 edge
    on_cycle: set[int] = set()
    for v in range(g.n_vertices):
        frontier = set(g._out_range_indices[v])
        seen = set(frontier)
        while frontier:
            if v in seen:
                break
            frontier = {
                t for u in frontier for t in g._out_range_indices[u]
            } - seen
            seen |= frontier
        if v in seen:
            on_cycle.add(v)
    return frozenset(on_cycle)


def vertices_on_cycles(g: Graph) -> tuple[str, ...]:
    """Vertices lying on at least one cycle, in canonical order."""
    idx = _cycle_vertex_indices(g)
    return tuple(v for i, v in enumerate(g.vertices) if i in idx)


def every_vertex_connects_to_cycle(g: Graph) -> bool:
    """True when each vertex has a (possibly empty) path to a cycle vertex."""
    targets = _cycle_vertex_indices(g)
    if not targets:
        return g.n_vertices == 0
    for v in range(g.n_vertices):
        if v in targets:
            continue
        frontier = {v}
        seen = {v}
        found = False
        while frontier and not found:
            frontier = {
                t for u in frontier for t in g._out_range_indices[u]
            } - seen
            seen |= frontier
            found = bool(frontier & targets)
        if not found:
            return False
    return True


# -- hereditary and saturated subsets --------------------------------------


def _subset_masks(g: Graph):
    n = g.n_vertices
    if n > SUBSET_ENUMERATION_CAP:
        raise GraphTooLargeError(
            f"subset enumeration capped at {SUBSET_ENUMERATION_CAP} vertices, graph has {n}"
        )
    out_mask = [0] * n
    for src, rng in g.edges:
        out_mask[g._index[src]] |= 1 << g._index[rng]
    regular = [v for v in range(n) if g._out_edge_ids[v]]
    for mask in range(1 << n):
        hereditary = True
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if out_mask[v] & ~mask:
                hereditary = False
                break
        if not hereditary:
            continue
        saturated = all(
            (out_mask[v] & ~mask) or (mask >> v) & 1 for v in regular
        )
        if saturated:
            yield mask


def hereditary_saturated_subsets(g: Graph) -> tuple[frozenset[str], ...]:
    """All hereditary and saturated vertex subsets.

    Hereditary: edges starting inside stay inside.  Saturated: a regular
    vertex all of whose ranges lie inside is itself inside.  Enumerated
    exhaustively over all 2^n subsets in increasing bitmask order over the
    canonical vertex order, so the empty set is first and the full set
    last.  Raises GraphTooLargeError past SUBSET_ENUMERATION_CAP vertices.
    """
    out = []
    for mask in _subset_masks(g):
        out.append(frozenset(v for i, v in enumerate(g.vertices) if (mask >> i) & 1))
    return tuple(out)


def nontrivial_hereditary_saturated(g: Graph) -> frozenset[str] | None:
    """First hereditary saturated subset other than {} and all vertices,
    or None when the lattice is trivial."""
    full = (1 << g.n_vertices) - 1
    for mask in _subset_masks(g):
        if mask not in (0, full):
            return frozenset(v for i, v in enumerate(g.vertices) if (mask >> i) & 1)
    return None


def is_hereditary(g: Graph, subset) -> bool:
    inside = set(subset)
    return all(rng in inside for (src, rng) in g.edges if src in inside)


def is_saturated(g: Graph, subset) -> bool:
    inside = set(subset)
    for v in g.regular_vertices():
        ranges = {g.edges[eid][1] for eid in g.out_edge_ids(v)}
        if ranges <= inside and v not in inside:
            return False
    return True


# -- equality and serialization --------------------------------------------


def same_labeled_graph(a: Graph, b: Graph) -> bool:
    """Equality as labeled graphs: same vertex set, same edge multiset."""
    return set(a.vertices) == set(b.vertices) and Counter(a.edges) == Counter(b.edges)


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [[s, r] for (s, r) in g.edges],
    }


def graph_from_json(data) -> Graph:
    """Build a graph from {"vertices": [...], "edges": [[src, rng], ...]}.

    Raises InvalidParameterError naming the offending field so callers can
    produce a usable diagnostic.
    """
    if not isinstance(data, dict):
        raise InvalidParameterError("graph document must be a JSON object")
    if "vertices" not in data:
        raise InvalidParameterError('graph document is missing the "vertices" field')
    if "edges" not in data:
        raise InvalidParameterError('graph document is missing the "edges" field')
    vertices = data["vertices"]
    edges = data["edges"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise InvalidParameterError('"vertices" must be a list of strings')
    if not isinstance(edges, list):
        raise InvalidParameterError('"edges" must be a list of [source, range] pairs')
    pairs = []
    for i, e in enumerate(edges):
        if (
            not isinstance(e, (list, tuple))
            or len(e) != 2
            or not all(isinstance(x, str) for x in e)
        ):
            raise InvalidParameterError(
                f'"edges"[{i}] must be a [source, range] pair of strings'
            )
        pairs.append((e[0], e[1]))
    return Graph(tuple(vertices), tuple(pairs))
