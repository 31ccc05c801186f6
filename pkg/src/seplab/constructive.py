"""Explicit separator constructions that certify balance without the exact
solver: median level sets on tree products, hyperplane cuts on embedded
tilings and grids, and tree-decomposition bags.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DecompositionError, GeodesicSearchError, InputError
from .generators import grid_coordinates, word_depths
from .graph import Graph, components, is_connected
from .separator import Separator, is_balanced_separator


# ---------------------------------------------------------------------------
# tree decompositions


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree plus one bag of host vertices per tree node."""

    tree: Graph
    bags: tuple  # tuple of sorted vertex tuples

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def validate_tree_decomposition(g: Graph, td: TreeDecomposition):
    """Raise DecompositionError naming the first violated axiom."""
    t = td.tree
    if len(td.bags) != t.num_vertices:
        raise DecompositionError("one bag required per tree node")
    if t.num_vertices == 0:
        raise DecompositionError("decomposition tree is empty")
    if not is_connected(t) or t.num_edges != t.num_vertices - 1:
        raise DecompositionError("decomposition graph is not a tree")
    covered = set()
    for bag in td.bags:
        covered.update(bag)
    if covered != set(range(g.num_vertices)):
        raise DecompositionError("axiom 1 violated: bags do not cover all vertices")
    bag_sets = [set(b) for b in td.bags]
    for (u, v) in g.edges():
        if not any(u in b and v in b for b in bag_sets):
            raise DecompositionError(f"axiom 2 violated: edge ({u},{v}) inside no bag")
    for x in range(g.num_vertices):
        nodes = [t_id for t_id, b in enumerate(bag_sets) if x in b]
        # the nodes holding x must induce a connected subtree
        node_set = set(nodes)
        stack = [nodes[0]]
        seen = {nodes[0]}
        while stack:
            u = stack.pop()
            for w in t.adjacency[u]:
                if w in node_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != node_set:
            raise DecompositionError(
                f"axiom 3 violated: nodes holding vertex {x} are not connected in the tree"
            )


def bag_separator(g: Graph, td: TreeDecomposition) -> Separator:
    """The bag whose removal best balances the host graph.

    Chooses the tree node x minimizing the maximum, over components C of the
    tree minus x, of |union of bags over C minus bag(x)|.  Balance is
    guaranteed non-strict: components have at most |V|/2 vertices and the bag
    has at most width+1.
    """
    validate_tree_decomposition(g, td)
    t = td.tree
    bag_sets = [set(b) for b in td.bags]
    best_node, best_worst = None, None
    for x in range(t.num_vertices):
        worst = 0
        for comp in components(t, (x,)):
            spill = set()
            for node in comp:
                spill |= bag_sets[node]
            spill -= bag_sets[x]
            worst = max(worst, len(spill))
        if best_worst is None or (worst, x) < (best_worst, best_node):
            best_node, best_worst = x, worst
    vertices = tuple(sorted(bag_sets[best_node]))
    comps = components(g, vertices)
    largest = len(comps[0]) if comps else 0
    return Separator(vertices, Fraction(1, 2), largest, False, "constructive")


# ---------------------------------------------------------------------------
# median level sets on subgraphs of the tree product


@dataclass(frozen=True)
class TtreeMedianReport:
    """Separator plus the construction trace the acceptance suite inspects."""

    separator: Separator
    fallback_fired: bool
    threshold: float
    level_cuts: tuple  # ((coordinate, level), ...) actually removed


def _median(values: Sequence) -> int:
    return sorted(values)[len(values) // 2]


def ttree_median_separator(s: Graph, tau: int = 1) -> TtreeMedianReport:
    """Median level-set separator for subgraphs of a tree product.

    Every vertex must carry a dotted-word label; its dot position yields the
    two tree depths.  With threshold tau*n/log2(n): take the first-coordinate
    median level if small, otherwise the four nearest sub-threshold level
    sets around the two medians (clamped to the occupied level range).  If
    the result misses strict 1/2-balance, further median level sets of the
    oversized components are added until balance holds; the report records
    whether that fallback fired.  Absent fallback the size obeys
    4*tau*n/log2(n).
    """
    if tau < 1:
        raise InputError("tau must be a positive integer")
    if s.labels is None:
        raise InputError("ttree_median_separator requires dotted-word labels")
    try:
        depths = [word_depths(lbl) for lbl in s.labels]
    except ValueError as exc:
        raise InputError(f"vertex label without a dot: {exc}") from exc
    n = s.num_vertices
    if n <= 1:
        sep = Separator((), Fraction(1, 2), n, False, "constructive")
        return TtreeMedianReport(sep, False, 0.0, ())

    threshold = tau * n / math.log2(n)
    d1 = [d[0] for d in depths]
    d2 = [d[1] for d in depths]

    def level_set(coord_vals, level):
        return {v for v, val in enumerate(coord_vals) if val == level}

    def pick_cut_levels(coord_vals):
        m = _median(coord_vals)
        if len(level_set(coord_vals, m)) < threshold:
            return [(coord_vals, m)]
        lo, hi = min(coord_vals), max(coord_vals)
        k_plus = next(
            (k for k in range(m, hi + 1) if len(level_set(coord_vals, k)) < threshold),
            hi,
        )
        k_minus = next(
            (k for k in range(m, lo - 1, -1) if len(level_set(coord_vals, k)) < threshold),
            lo,
        )
        return [(coord_vals, k_minus), (coord_vals, k_plus)]

    cuts = pick_cut_levels(d1)
    if len(cuts) == 2:  # median level too big: use both coordinates
        cuts += pick_cut_levels(d2)
    removed = set()
    cut_trace = []
    for coord_vals, level in cuts:
        removed |= level_set(coord_vals, level)
        cut_trace.append((1 if coord_vals is d1 else 2, level))

    fallback = False
    while True:
        report = is_balanced_separator(s, tuple(sorted(removed)), Fraction(1, 2))
        if report.valid:
            break
        fallback = True
        worst = components(s, tuple(sorted(removed)))[0]
        vals1 = [d1[v] for v in worst]
        vals2 = [d2[v] for v in worst]
        coord_vals, vals, which = (
            (d1, vals1, 1)
            if max(vals1) - min(vals1) >= max(vals2) - min(vals2)
            else (d2, vals2, 2)
        )
        m = _median(vals)
        removed |= {v for v in worst if coord_vals[v] == m}
        cut_trace.append((which, m))

    vertices = tuple(sorted(removed))
    final = is_balanced_separator(s, vertices, Fraction(1, 2))
    sep = Separator(vertices, Fraction(1, 2), final.max_component, False, "constructive")
    return TtreeMedianReport(sep, fallback, threshold, tuple(cut_trace))


# ---------------------------------------------------------------------------
# hyperplane cuts


HYPERPLANE_BALANCE = Fraction(2, 3)


def _geodesic_through(o: complex, theta: float) -> tuple:
    """Ideal endpoints of the geodesic through o with direction theta."""
    w = cmath.exp(1j * theta)
    conj = o.conjugate()
    e1 = (w + o) / (1 + conj * w)
    e2 = (-w + o) / (1 - conj * w)
    return e1, e2


def _distance_to_geodesic(pz: complex, e1: complex, e2: complex) -> float:
    cross = e1.real * e2.imag - e1.imag * e2.real
    if abs(cross) < 1e-12:
        # near-diametral: Euclidean chord through e1, e2
        d = e2 - e1
        return abs((d.real * (pz.imag - e1.imag) - d.imag * (pz.real - e1.real))) / abs(d)
    ra, rb = abs(e1) ** 2 + 1.0, abs(e2) ** 2 + 1.0
    det = 2.0 * cross
    c = complex((ra * e2.imag - rb * e1.imag) / det, (rb * e1.real - ra * e2.real) / det)
    radius = math.sqrt(abs(c) ** 2 - 1.0)
    if abs(pz - c) < 1e-15:
        return radius
    nearest = c + radius * (pz - c) / abs(pz - c)
    if abs(nearest) > 1.0 + 1e-9:
        return min(abs(pz - e1), abs(pz - e2))
    return abs(abs(pz - c) - radius)


def hyperplane_separator(
    g: Graph,
    trials: int = 64,
    seed: int = 0,
    grid_sides: Optional[Sequence] = None,
) -> Separator:
    """Geodesic (or axis-median) cut, 2/3-balanced.

    Embedded tilings: sample `trials` seeded random geodesics through the
    coordinate centroid; a vertex is hit when its cell (half the distance to
    its nearest neighbor) meets the geodesic.  Returns the smallest balanced
    hit set, ties by angle index.  Grids (`grid_sides` given): remove the
    median hyperplane of the longest axis, deterministically.
    """
    n = g.num_vertices
    if n == 1:
        return Separator((), HYPERPLANE_BALANCE, 1, False, "constructive")

    if grid_sides is not None:
        sides = [int(s) for s in grid_sides]
        if math.prod(sides) != n:
            raise InputError("grid_sides inconsistent with vertex count")
        axis = max(range(len(sides)), key=lambda a: (sides[a], -a))
        cut_coord = sides[axis] // 2
        pts = grid_coordinates(sides)
        vertices = tuple(v for v, p in enumerate(pts) if p[axis] == cut_coord)
        report = is_balanced_separator(g, vertices, HYPERPLANE_BALANCE)
        if not report.valid:
            raise GeodesicSearchError("axis-median hyperplane is not 2/3-balanced")
        return Separator(vertices, HYPERPLANE_BALANCE, report.max_component, False, "constructive")

    if g.coords is None:
        raise InputError("hyperplane_separator needs coordinates or grid_sides")
    if trials < 1:
        raise InputError("trials must be >= 1")

    pts = [complex(x, y) for x, y in g.coords]
    centroid = sum(pts) / n
    radii = []
    for v in range(n):
        nbr = min((abs(pts[v] - pts[u]) for u in g.adjacency[v]), default=0.0)
        radii.append(0.5 * nbr)

    rng = random.Random(seed)
    angles = [rng.uniform(0.0, math.pi) for _ in range(trials)]
    best = None  # (size, angle index, vertices, max_component)
    for idx, theta in enumerate(angles):
        e1, e2 = _geodesic_through(centroid, theta)
        hit = tuple(
            v for v in range(n) if _distance_to_geodesic(pts[v], e1, e2) <= radii[v]
        )
        if not hit:
            continue
        report = is_balanced_separator(g, hit, HYPERPLANE_BALANCE)
        if report.valid and (best is None or (len(hit), idx) < (best[0], best[1])):
            best = (len(hit), idx, hit, report.max_component)
    if best is None:
        raise GeodesicSearchError(
            f"no geodesic among {trials} trials produced a 2/3-balanced cut; "
            "increase trials"
        )
    return Separator(best[2], HYPERPLANE_BALANCE, best[3], False, "constructive")
