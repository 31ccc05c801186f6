"""Deterministic constructors for the graph families under study.

Every generator is rooted at vertex 0 and produces byte-identical output for
identical parameters.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence

from .errors import InputError
from .graph import Graph, ball, from_edges

FAMILIES = (
    "grid",
    "grid_linf",
    "binary_tree",
    "tree_product_ball",
    "sierpinski",
    "hyperbolic_tiling_ball",
    "lamplighter_ball",
    "comb",
)


def grid_coordinates(sides: Sequence) -> list:
    """Mixed-radix coordinates for every id of grid(sides), row-major."""
    coords = []
    for vid in range(math.prod(sides)):
        rest = vid
        pt = []
        for s in reversed(sides):
            pt.append(rest % s)
            rest //= s
        coords.append(tuple(reversed(pt)))
    return coords


def grid(sides: Sequence, metric: str = "l1") -> Graph:
    """Box graph on the product of [0, side) ranges.

    l1: adjacent iff the points differ by 1 in exactly one coordinate.
    linf: adjacent iff all coordinates differ by at most 1 and not all equal.
    """
    sides = [int(s) for s in sides]
    if not sides or any(s < 1 for s in sides):
        raise InputError("grid sides must be integers >= 1")
    if metric not in ("l1", "linf"):
        raise InputError(f"unknown grid metric {metric!r}")
    pts = grid_coordinates(sides)
    index = {p: i for i, p in enumerate(pts)}
    d = len(sides)
    edges = []
    if metric == "l1":
        for i, p in enumerate(pts):
            for axis in range(d):
                if p[axis] + 1 < sides[axis]:
                    q = list(p)
                    q[axis] += 1
                    edges.append((i, index[tuple(q)]))
    else:
        deltas = [()]
        for _ in range(d):
            deltas = [t + (e,) for t in deltas for e in (-1, 0, 1)]
        deltas = [t for t in deltas if any(t)]
        for i, p in enumerate(pts):
            for t in deltas:
                q = tuple(p[a] + t[a] for a in range(d))
                j = index.get(q)
                if j is not None and i < j:
                    edges.append((i, j))
    return from_edges(len(pts), edges)


def binary_tree(depth: int) -> Graph:
    """Complete rooted binary tree with breadth-first ids, root 0."""
    if depth < 0:
        raise InputError("depth must be >= 0")
    n = 2 ** (depth + 1) - 1
    edges = []
    for v in range(n):
        for child in (2 * v + 1, 2 * v + 2):
            if child < n:
                edges.append((v, child))
    return from_edges(n, edges)


def comb(width: int, height: int) -> Graph:
    """Grid box with all vertical edges but horizontal edges only on row y=0."""
    if width < 1 or height < 1:
        raise InputError("comb dimensions must be >= 1")
    idx = lambda x, y: x * height + y
    edges = []
    for x in range(width):
        for y in range(height - 1):
            edges.append((idx(x, y), idx(x, y + 1)))
    for x in range(width - 1):
        edges.append((idx(x, 0), idx(x + 1, 0)))
    return from_edges(width * height, edges)


# ---------------------------------------------------------------------------
# product of two binary trees, dotted-word model


def _tpb_neighbors_up(word: str):
    """Words reachable by adding one digit at the left or right end."""
    yield "0" + word
    yield "1" + word
    yield word + "0"
    yield word + "1"


def tree_product_ball(k: int) -> Graph:
    """Ball of radius k around the root of the product of two binary trees.

    Vertices are binary words with a dot; neighbors add or remove one digit at
    the left or right end.  The dot position splits a word into the two tree
    coordinates, whose depths drive the median separator.  Labels store the
    words; the root "." has id 0.
    """
    if k < 0:
        raise InputError("k must be >= 0")
    ids: Dict[str, int] = {".": 0}
    order = ["."]
    queue = deque(["."])
    while queue:
        word = queue.popleft()
        if len(word) - 1 >= k:
            continue
        for nxt in _tpb_neighbors_up(word):
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
    edges = set()
    for word, i in ids.items():
        for nxt in _tpb_neighbors_up(word):
            j = ids.get(nxt)
            if j is not None:
                edges.add((min(i, j), max(i, j)))
    return from_edges(len(order), sorted(edges), labels=order)


def word_depths(label: str) -> tuple:
    """Depths (|left word|, |right word|) of a dotted-word label."""
    dot = label.index(".")
    return dot, len(label) - 1 - dot


# ---------------------------------------------------------------------------
# Sierpinski gasket


def sierpinski(level: int) -> Graph:
    """Finite Sierpinski gasket; level 1 is a triangle, each next level glues
    three copies at corner vertices.  Root = corner (0,0), id 0."""
    if level < 1:
        raise InputError("level must be >= 1")
    verts = {(0, 0), (1, 0), (0, 1)}
    edges = {((0, 0), (1, 0)), ((0, 0), (0, 1)), ((1, 0), (0, 1))}
    size = 1
    for _ in range(level - 1):
        shifted_x = {((a + size, b), (c + size, d)) for (a, b), (c, d) in edges}
        shifted_y = {((a, b + size), (c, d + size)) for (a, b), (c, d) in edges}
        edges |= shifted_x | shifted_y
        verts = {v for e in edges for v in e}
        size *= 2
    order = sorted(verts)
    index = {p: i for i, p in enumerate(order)}
    return from_edges(len(order), sorted((index[a], index[b]) for a, b in edges))


# ---------------------------------------------------------------------------
# lamplighter group ball


def lamplighter_ball(r: int) -> Graph:
    """Ball of radius r in the Cayley graph of the Z/2Z lamplighter over Z.

    States are (marker position, finite set of lit lamps); generators move the
    marker one step right or left, or toggle the lamp at the marker.  The
    identity state has id 0; labels encode states as "pos|l1,l2,...".
    """
    if r < 0:
        raise InputError("r must be >= 0")
    start = (0, frozenset())
    ids = {start: 0}
    order = [start]
    dist = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if dist[state] >= r:
            continue
        pos, lamps = state
        moves = (
            (pos + 1, lamps),
            (pos - 1, lamps),
            (pos, lamps ^ {pos}),
        )
        for nxt in moves:
            nxt = (nxt[0], frozenset(nxt[1]))
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                dist[nxt] = dist[state] + 1
                queue.append(nxt)
    edges = set()
    for state, i in ids.items():
        pos, lamps = state
        for nxt in ((pos + 1, lamps), (pos - 1, lamps), (pos, frozenset(lamps ^ {pos}))):
            j = ids.get(nxt)
            if j is not None and i < j:
                edges.add((i, j))
    labels = [f"{pos}|{','.join(map(str, sorted(lamps)))}" for pos, lamps in order]
    return from_edges(len(order), sorted(edges), labels=labels)


def lamplighter_position_map(g: Graph):
    """Projection of a lamplighter ball onto the path of marker positions.

    Returns a GraphMap into grid([range]) where vertex i of the path is
    position min_pos + i.
    """
    from .graph import GraphMap

    if g.labels is None:
        raise InputError("expected a labeled lamplighter ball")
    positions = [int(lbl.split("|")[0]) for lbl in g.labels]
    lo, hi = min(positions), max(positions)
    target = grid([hi - lo + 1])
    return GraphMap(g, target, tuple(p - lo for p in positions))


# ---------------------------------------------------------------------------
# hyperbolic {p,q} tessellation ball in the Poincare disk

_DEDUP_TOL = 1e-9


class _PointIndex:
    """Spatial hash merging points closer than a tolerance."""

    def __init__(self, tol: float = _DEDUP_TOL):
        self.tol = tol
        self.points: list = []
        self.cells: Dict[tuple, list] = {}

    def _cell(self, z: complex) -> tuple:
        return (int(math.floor(z.real / self.tol)), int(math.floor(z.imag / self.tol)))

    def find(self, z: complex):
        cx, cy = self._cell(z)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in self.cells.get((cx + dx, cy + dy), ()):
                    if abs(self.points[idx] - z) <= self.tol:
                        return idx
        return None

    def find_or_add(self, z: complex) -> tuple:
        idx = self.find(z)
        if idx is not None:
            return idx, False
        idx = len(self.points)
        self.points.append(z)
        self.cells.setdefault(self._cell(z), []).append(idx)
        return idx, True


def _reflect_across_geodesic(z: complex, a: complex, b: complex) -> complex:
    """Reflect z across the hyperbolic geodesic through points a, b."""
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-13:
        # geodesic is a diameter: Euclidean reflection across the line 0-a-b
        w = b - a
        theta = cmath.phase(w)
        return cmath.exp(2j * theta) * z.conjugate()
    # circle orthogonal to the unit circle through a and b:
    # 2 Re(conj(c) a) = |a|^2 + 1 and same for b
    ra, rb = abs(a) ** 2 + 1.0, abs(b) ** 2 + 1.0
    det = 2.0 * (a.real * b.imag - a.imag * b.real)
    cx = (ra * b.imag - rb * a.imag) / det
    cy = (rb * a.real - ra * b.real) / det
    c = complex(cx, cy)
    r2 = abs(c) ** 2 - 1.0
    return c + r2 / (z - c).conjugate()


def hyperbolic_tiling_ball(p: int, q: int, r: int) -> Graph:
    """Combinatorial ball of radius r around a vertex of the {p,q} tiling.

    Built by reflecting the fundamental polygon across its edges, merging
    duplicate vertices by coordinate proximity (tolerance 1e-9).  Every vertex
    carries its Poincare-disk coordinates; interior vertices have degree q.
    """
    if (p - 2) * (q - 2) <= 4:
        raise InputError(f"{{p={p},q={q}}} is not hyperbolic: need (p-2)(q-2) > 4")
    if r < 0:
        raise InputError("radius must be >= 0")
    if r == 0:
        return from_edges(1, [], coords=[(0.0, 0.0)])

    # circumradius of the fundamental p-gon with vertex angle 2*pi/q
    rho = math.acosh(1.0 / (math.tan(math.pi / p) * math.tan(math.pi / q)))
    euclid = math.tanh(rho / 2.0)
    base = [euclid * cmath.exp(2j * math.pi * j / p) for j in range(p)]
    # translate so vertex 0 of the base polygon sits at the origin
    a = base[0]
    base = [(z - a) / (1 - a.conjugate() * z) for z in base]

    vindex = _PointIndex()
    tindex = _PointIndex()
    tiles: list = []  # each tile is a tuple of vertex ids, in polygon order
    edge_tiles: Dict[tuple, int] = {}
    vertex_fans: Dict[int, list] = {}

    def add_tile(poly) -> bool:
        center = sum(poly) / len(poly)
        _, is_new = tindex.find_or_add(center)
        if not is_new:
            return False
        vids = []
        for z in poly:
            vid, _ = vindex.find_or_add(z)
            vids.append(vid)
        tid = len(tiles)
        tiles.append(tuple(vids))
        for i, u in enumerate(vids):
            v = vids[(i + 1) % len(vids)]
            edge_tiles[(min(u, v), max(u, v))] = edge_tiles.get((min(u, v), max(u, v)), 0) + 1
            vertex_fans.setdefault(u, []).append(tid)
        return True

    def complete_fan(v: int):
        guard = 0
        while len(vertex_fans.get(v, ())) < q:
            guard += 1
            if guard > 4 * q:
                raise RuntimeError("tiling fan completion failed to converge")
            progressed = False
            for tid in list(vertex_fans.get(v, ())):
                vids = tiles[tid]
                i = vids.index(v)
                for u in (vids[i - 1], vids[(i + 1) % len(vids)]):
                    key = (min(u, v), max(u, v))
                    if edge_tiles.get(key, 0) == 1:
                        poly = [vindex.points[w] for w in vids]
                        za, zb = vindex.points[v], vindex.points[u]
                        add_tile([_reflect_across_geodesic(z, za, zb) for z in poly])
                        progressed = True
                        break
                if progressed:
                    break
            if not progressed:
                break

    add_tile(base)
    root = vindex.find(0j)
    while True:
        # BFS over the current patch
        n = len(vindex.points)
        adj = [set() for _ in range(n)]
        for (u, v) in edge_tiles:
            adj[u].add(v)
            adj[v].add(u)
        dist = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        needy = [
            v
            for v in range(n)
            if 0 <= dist[v] <= r and len(vertex_fans.get(v, ())) < q
        ]
        if not needy:
            break
        for v in needy:
            complete_fan(v)

    n = len(vindex.points)
    edges = sorted(edge_tiles.keys())
    coords = [(z.real, z.imag) for z in vindex.points]
    patch = from_edges(n, edges, coords=coords)
    result, _ = ball(patch, root, r)
    return result


# ---------------------------------------------------------------------------
# family registry used by profiles and the CLI


@dataclass(frozen=True)
class FamilySpec:
    """A graph family with fixed options; one integer parameter is swept."""

    family: str
    options: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "options", dict(self.options))

    def describe(self) -> str:
        if not self.options:
            return self.family
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.options.items()))
        return f"{self.family}({inner})"

    def build(self, param: int) -> Graph:
        opts = self.options
        if self.family == "grid":
            return grid([param] * int(opts.get("dims", 2)), "l1")
        if self.family == "grid_linf":
            return grid([param] * int(opts.get("dims", 2)), "linf")
        if self.family == "binary_tree":
            return binary_tree(param)
        if self.family == "tree_product_ball":
            return tree_product_ball(param)
        if self.family == "sierpinski":
            return sierpinski(param)
        if self.family == "hyperbolic_tiling_ball":
            return hyperbolic_tiling_ball(int(opts.get("p", 4)), int(opts.get("q", 5)), param)
        if self.family == "lamplighter_ball":
            return lamplighter_ball(param)
        if self.family == "comb":
            return comb(param, param)
        raise InputError(f"unknown family {self.family!r}")
