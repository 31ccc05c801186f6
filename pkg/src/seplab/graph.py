"""Immutable finite simple undirected graphs and the traversal primitives
every other module consumes.

Vertex ids are dense integers 0..n-1.  All determinism contracts (orderings,
tie-breaks) are stated in terms of ids.  Graphs are immutable after
construction and safe to share across concurrent tasks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError

#: Marker used by :func:`bfs_distances` for vertices with no path to the root.
UNREACHABLE = -1

VertexSet = tuple  # strictly increasing tuple of vertex ids


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph.

    ``adjacency[v]`` is the sorted tuple of neighbors of ``v``.  ``coords``
    (unit-disk embeddings) and ``labels`` (opaque per-vertex strings) are
    optional payload; separator code never depends on them.
    """

    num_vertices: int
    adjacency: tuple
    coords: Optional[tuple] = None
    labels: Optional[tuple] = None

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self):
        """Yield edges as (u, v) with u < v, in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def neighbor_masks(self) -> list:
        """Adjacency as bitmasks, for the bitset-based solvers."""
        return [sum(1 << u for u in nbrs) for nbrs in self.adjacency]


def from_edges(num_vertices: int, edges: Iterable, coords=None, labels=None) -> Graph:
    """Build a validated Graph from an edge list.

    Rejects self-loops, duplicate edges and out-of-range ids; coordinates,
    when given, must lie strictly inside the unit disk.
    """
    if num_vertices < 0:
        raise InputError("num_vertices must be non-negative")
    nbrs = [set() for _ in range(num_vertices)]
    for u, v in edges:
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise InputError(f"edge ({u},{v}) out of range for {num_vertices} vertices")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise InputError(f"duplicate edge ({u},{v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    if coords is not None:
        coords = tuple((float(x), float(y)) for x, y in coords)
        if len(coords) != num_vertices:
            raise InputError("coords length must equal num_vertices")
        for i, (x, y) in enumerate(coords):
            if x * x + y * y >= 1.0:
                raise InputError(f"coordinate of vertex {i} not inside the unit disk")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != num_vertices:
            raise InputError("labels length must equal num_vertices")
    return Graph(num_vertices, tuple(tuple(sorted(a)) for a in nbrs), coords, labels)


def as_vertex_set(g: Graph, vertices: Iterable) -> VertexSet:
    """Normalize to a sorted duplicate-free tuple, validating ranges."""
    vs = tuple(sorted(set(int(v) for v in vertices)))
    if vs and not (0 <= vs[0] and vs[-1] < g.num_vertices):
        raise InputError(f"vertex set {vs} out of range for {g.num_vertices} vertices")
    return vs


def bfs_distances(g: Graph, v0: int) -> tuple:
    """Exact shortest-path distances from ``v0``; UNREACHABLE where no path."""
    if not (0 <= v0 < g.num_vertices):
        raise InputError(f"invalid start vertex {v0}")
    dist = [UNREACHABLE] * g.num_vertices
    dist[v0] = 0
    queue = deque([v0])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in g.adjacency[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du + 1
                queue.append(w)
    return tuple(dist)


def components(g: Graph, removed: Iterable = ()) -> list:
    """Connected components of ``g`` minus ``removed``.

    Returns a partition of the surviving vertices as sorted tuples, ordered by
    (size descending, smallest id ascending) so downstream output is
    byte-reproducible.
    """
    rem = as_vertex_set(g, removed)
    rem_set = set(rem)
    seen = [False] * g.num_vertices
    comps = []
    for s in range(g.num_vertices):
        if seen[s] or s in rem_set:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adjacency[u]:
                if not seen[w] and w not in rem_set:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def is_connected(g: Graph) -> bool:
    if g.num_vertices == 0:
        return True
    return UNREACHABLE not in bfs_distances(g, 0)


def induced_subgraph(g: Graph, vertices: Sequence) -> tuple:
    """Subgraph induced on ``vertices`` (any order), plus a translation table.

    New ids follow the order of ``vertices``; translation maps new -> old.
    Coordinates and labels are carried over.
    """
    order = list(vertices)
    if len(set(order)) != len(order):
        raise InputError("duplicate vertices in induced_subgraph selection")
    index = {old: new for new, old in enumerate(order)}
    edges = []
    for new, old in enumerate(order):
        for w in g.adjacency[old]:
            wn = index.get(w)
            if wn is not None and new < wn:
                edges.append((new, wn))
    coords = tuple(g.coords[old] for old in order) if g.coords is not None else None
    labels = tuple(g.labels[old] for old in order) if g.labels is not None else None
    return from_edges(len(order), edges, coords, labels), tuple(order)


def ball(g: Graph, v0: int, r: int) -> tuple:
    """Induced subgraph on {v : d(v, v0) <= r}, reindexed with v0 -> 0.

    Vertices are reordered by (distance, old id); the returned translation
    table maps new ids back to old ones.
    """
    if r < 0:
        raise InputError("radius must be non-negative")
    dist = bfs_distances(g, v0)
    selected = [v for v in range(g.num_vertices) if dist[v] != UNREACHABLE and dist[v] <= r]
    selected.sort(key=lambda v: (dist[v], v))
    return induced_subgraph(g, selected)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: (u, v) indexed u*|h| + v, move in one coordinate."""
    if g.num_vertices == 0 or h.num_vertices == 0:
        raise InputError("cartesian_product requires nonempty factors")
    m = h.num_vertices
    edges = []
    for u in range(g.num_vertices):
        base = u * m
        for v, w in h.edges():
            edges.append((base + v, base + w))
    for u, w in g.edges():
        for v in range(m):
            edges.append((u * m + v, w * m + v))
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = tuple(
            f"({g.labels[u]},{h.labels[v]})"
            for u in range(g.num_vertices)
            for v in range(m)
        )
    return from_edges(g.num_vertices * m, edges, labels=labels)


@dataclass(frozen=True)
class GraphMap:
    """Total vertex map between two graphs: image[u] is the target of u."""

    source: Graph
    target: Graph
    image: tuple

    def __post_init__(self):
        if len(self.image) != self.source.num_vertices:
            raise InputError("map must be total: one image per source vertex")
        for u, y in enumerate(self.image):
            if not (0 <= y < self.target.num_vertices):
                raise InputError(f"image of {u} is {y}, invalid in target")


def identity_map(g: Graph) -> GraphMap:
    return GraphMap(g, g, tuple(range(g.num_vertices)))
