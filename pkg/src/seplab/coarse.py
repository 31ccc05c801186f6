"""Hyperbolicity constants, canonical geodesic forests, sphere classes and
the quotient-tree construction.

Tie-breaks are everywhere by lowest vertex id, so every quotient and
projection is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import CapacityError, InputError
from .graph import (
    UNREACHABLE,
    Graph,
    GraphMap,
    bfs_distances,
    from_edges,
    is_connected,
)

#: Vertex cap for the thin-triangles method (geodesic enumeration).
THIN_TRIANGLES_LIMIT = 60

#: Cap on enumerated geodesics per vertex pair for thin_triangles.
GEODESIC_CAP = 2048


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs distances as int16; requires a connected graph."""
    n = g.num_vertices
    out = np.empty((n, n), dtype=np.int16)
    for v in range(n):
        row = bfs_distances(g, v)
        if UNREACHABLE in row:
            raise InputError("distance_matrix requires a connected graph")
        out[v] = row
    return out


# ---------------------------------------------------------------------------
# hyperbolicity


def _four_point_python(dist) -> int:
    n = len(dist)
    best = 0
    for x, y, z, w in combinations(range(n), 4):
        s1 = dist[x][y] + dist[z][w]
        s2 = dist[x][z] + dist[y][w]
        s3 = dist[x][w] + dist[y][z]
        hi = max(s1, s2, s3)
        mid = s1 + s2 + s3 - hi - min(s1, s2, s3)
        best = max(best, hi - mid)
    return best


_jitted_four_point = None


def _four_point_numba(d: np.ndarray) -> int:
    global _jitted_four_point
    if _jitted_four_point is None:
        import numba

        @numba.njit(parallel=True, cache=True, fastmath=False)
        def kernel(dm):
            n = dm.shape[0]
            per_x = np.zeros(n, dtype=np.int32)
            for x in numba.prange(n):
                local = np.int32(0)
                row_x = dm[x]
                for y in range(x + 1, n):
                    dxy = row_x[y]
                    row_y = dm[y]
                    for z in range(y + 1, n):
                        dxz = row_x[z]
                        dyz = row_y[z]
                        row_z = dm[z]
                        for w in range(z + 1, n):
                            s1 = dxy + row_z[w]
                            s2 = dxz + row_y[w]
                            s3 = dyz + row_x[w]
                            hi = max(s1, max(s2, s3))
                            lo = min(s1, min(s2, s3))
                            val = 2 * hi - s1 - s2 - s3 + lo
                            if val > local:
                                local = val
                per_x[x] = local
            return per_x.max()

        _jitted_four_point = kernel
    return int(_jitted_four_point(d.astype(np.int32)))


def _enumerate_geodesics(g: Graph, dist_rows, u: int, v: int) -> list:
    """All shortest u-v paths as vertex tuples, capped at GEODESIC_CAP."""
    du = dist_rows[u]
    dv = dist_rows[v]
    total = du[v]
    paths = [[u]]
    for step in range(1, total + 1):
        nxt = []
        for path in paths:
            tail = path[-1]
            for w in g.adjacency[tail]:
                if du[w] == step and dv[w] == total - step:
                    nxt.append(path + [w])
                    if len(nxt) > GEODESIC_CAP:
                        raise CapacityError(
                            f"more than {GEODESIC_CAP} geodesics between {u} and {v}"
                        )
        paths = nxt
    return [tuple(p) for p in paths]


def hyperbolicity_delta(g: Graph, method: str = "four_point") -> Fraction:
    """Smallest delta in the requested sense.

    four_point: the Gromov four-point constant, max over quadruples of
    (largest sum - second sum)/2.  thin_triangles: smallest delta making
    every enumerated geodesic triangle thin (each point of one side within
    delta of one of the other two sides).
    """
    if not is_connected(g):
        raise InputError("hyperbolicity is defined here for connected graphs")
    n = g.num_vertices
    if method == "four_point":
        if n < 4:
            return Fraction(0)
        d = distance_matrix(g)
        if n <= 40:
            best = _four_point_python(d.tolist())
        else:
            best = _four_point_numba(d)
        return Fraction(best, 2)
    if method == "thin_triangles":
        if n > THIN_TRIANGLES_LIMIT:
            raise CapacityError(
                f"thin_triangles supports at most {THIN_TRIANGLES_LIMIT} vertices, got {n}"
            )
        dist_rows = [bfs_distances(g, v) for v in range(n)]
        geod = {}
        for u in range(n):
            for v in range(u + 1, n):
                geod[(u, v)] = _enumerate_geodesics(g, dist_rows, u, v)

        def sides(a, b):
            return geod[(min(a, b), max(a, b))]

        best = 0
        for u, v, w in combinations(range(n), 3):
            for corner_pair, others in (
                ((u, v), (v, w, w, u)),
                ((v, w), (w, u, u, v)),
                ((w, u), (u, v, v, w)),
            ):
                side2 = sides(others[0], others[1])
                side3 = sides(others[2], others[3])
                for g1 in sides(*corner_pair):
                    for p in g1:
                        dp = dist_rows[p]
                        worst2 = max(min(dp[x] for x in s) for s in side2)
                        worst3 = max(min(dp[x] for x in s) for s in side3)
                        best = max(best, min(worst2, worst3))
        return Fraction(best)
    raise InputError(f"unknown hyperbolicity method {method!r}")


# ---------------------------------------------------------------------------
# sigma forest (canonical geodesics toward a basepoint)


@dataclass(frozen=True)
class SigmaForest:
    root: int
    parent: tuple  # parent[v] is a neighbor strictly closer to the root

    def ancestor(self, v: int, steps: int) -> int:
        for _ in range(steps):
            v = self.parent[v]
        return v

    def geodesic(self, v: int) -> tuple:
        """The canonical geodesic from v down to the root."""
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        return tuple(path)


def sigma_geodesics(g: Graph, v0: int) -> SigmaForest:
    """Parent pointers along shortest paths to v0, lowest-id tie-break."""
    if not is_connected(g):
        raise InputError("sigma_geodesics requires a connected graph")
    dist = bfs_distances(g, v0)
    parent = []
    for v in range(g.num_vertices):
        if v == v0:
            parent.append(v0)
            continue
        closer = [u for u in g.adjacency[v] if dist[u] == dist[v] - 1]
        parent.append(min(closer))
    return SigmaForest(v0, tuple(parent))


# ---------------------------------------------------------------------------
# sphere classes and the quotient tree


@dataclass(frozen=True)
class SphereLevel:
    distance: int
    classes: tuple  # tuple of sorted vertex tuples
    diameters: tuple  # ambient-metric diameter per class


def _classes_within(g: Graph, sphere, max_step: int) -> list:
    """Partition of a sphere by chains of steps of length <= max_step."""
    if not sphere:
        return []
    sphere = sorted(sphere)
    index = {v: i for i, v in enumerate(sphere)}
    parent = list(range(len(sphere)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    sphere_set = set(sphere)
    for v in sphere:
        # truncated BFS to depth max_step
        if max_step == 0:
            continue
        dist = {v: 0}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            if dist[u] == max_step:
                continue
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        for w, dw in dist.items():
            if w in sphere_set and dw <= max_step:
                ra, rb = find(index[v]), find(index[w])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for i, v in enumerate(sphere):
        groups.setdefault(find(i), []).append(v)
    return [tuple(sorted(vs)) for _, vs in sorted(groups.items())]


def _class_diameter(g: Graph, cls) -> int:
    diam = 0
    for v in cls:
        dist = bfs_distances(g, v)
        diam = max(diam, max(dist[u] for u in cls))
    return diam


def sphere_classes(g: Graph, v0: int, delta: int) -> list:
    """Per-sphere partitions by <=2*delta proximity chains, with diameters."""
    if delta < 0:
        raise InputError("delta must be >= 0")
    if not is_connected(g):
        raise InputError("sphere_classes requires a connected graph")
    dist = bfs_distances(g, v0)
    levels = []
    for radius in range(max(dist) + 1):
        sphere = [v for v in range(g.num_vertices) if dist[v] == radius]
        classes = _classes_within(g, sphere, 2 * delta)
        diams = tuple(_class_diameter(g, c) for c in classes)
        levels.append(SphereLevel(radius, tuple(classes), diams))
    return levels


@dataclass(frozen=True)
class QuotientTree:
    delta: int
    level_spacing: int  # 3*delta + 1
    classes: tuple  # vertex tuple per quotient node
    class_levels: tuple  # BFS level index L (host distance = spacing * L)
    class_diameters: tuple
    tree: Graph
    pi: GraphMap
    is_tree: bool
    diagnostic: Optional[str]


def quotient_tree(g: Graph, v0: int, delta: int) -> QuotientTree:
    """Quotient of the spheres at distances divisible by 3*delta+1.

    Classes chain same-sphere vertices at steps <= 2*delta; a class is joined
    to the class of its sigma-ancestor 3*delta+1 steps down.  The projection
    pi sends each vertex to the class of its nearest sigma-ancestor on a kept
    sphere.  For inputs that are not delta-hyperbolic the result may fail to
    be a tree; that outcome is reported as data, not an error.
    """
    if delta < 0:
        raise InputError("delta must be >= 0")
    if not is_connected(g):
        raise InputError("quotient_tree requires a connected graph")
    spacing = 3 * delta + 1
    dist = bfs_distances(g, v0)
    forest = sigma_geodesics(g, v0)

    kept_levels = range(0, max(dist) + 1, spacing)
    classes = []
    class_levels = []
    class_of = {}
    for level_index, radius in enumerate(kept_levels):
        sphere = [v for v in range(g.num_vertices) if dist[v] == radius]
        for cls in _classes_within(g, sphere, 2 * delta):
            cid = len(classes)
            classes.append(cls)
            class_levels.append(level_index)
            for v in cls:
                class_of[v] = cid

    edges = set()
    for cid, cls in enumerate(classes):
        if class_levels[cid] == 0:
            continue
        for v in cls:
            u = forest.ancestor(v, spacing)
            edges.add((min(cid, class_of[u]), max(cid, class_of[u])))
    tree = from_edges(len(classes), sorted(edges))

    image = []
    for v in range(g.num_vertices):
        vprime = forest.ancestor(v, dist[v] % spacing)
        image.append(class_of[vprime])
    pi = GraphMap(g, tree, tuple(image))

    diag = None
    if tree.num_edges != tree.num_vertices - 1:
        diag = (
            f"not a tree: {tree.num_vertices} classes, {tree.num_edges} edges"
        )
    elif not is_connected(tree):
        diag = "not a tree: quotient is disconnected"
    diameters = tuple(_class_diameter(g, c) for c in classes)
    return QuotientTree(
        delta=delta,
        level_spacing=spacing,
        classes=tuple(classes),
        class_levels=tuple(class_levels),
        class_diameters=diameters,
        tree=tree,
        pi=pi,
        is_tree=diag is None,
        diagnostic=diag,
    )
