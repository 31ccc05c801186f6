"""Quasi-level sets of Lipschitz functions on square boxes, their surround
chains, and verification of bounded-piece colorings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError
from .graph import Graph, bfs_distances, components, induced_subgraph
from .generators import grid


@dataclass(frozen=True)
class SurroundStep:
    level: int
    component: tuple
    size: int


@dataclass(frozen=True)
class LevelSetReport:
    n: int
    k: int
    levels: tuple  # ((level value, (component, ...)), ...) sorted by value
    chain: tuple  # SurroundStep sequence, empty if no start requested
    stop_reason: Optional[str]


def _box_sides_touched(n: int, comp) -> set:
    touched = set()
    for vid in comp:
        x, y = divmod(vid, n)
        if x == 0:
            touched.add("left")
        if x == n - 1:
            touched.add("right")
        if y == 0:
            touched.add("bottom")
        if y == n - 1:
            touched.add("top")
    return touched


def _spans_box(n: int, comp) -> bool:
    t = _box_sides_touched(n, comp)
    return ("left" in t and "right" in t) or ("bottom" in t and "top" in t)


def quasi_level_components(
    n: int,
    g_values: Sequence,
    k: int,
    chain_start: Optional[int] = None,
) -> LevelSetReport:
    """Components of the quasi-level sets floor(g/k) on the n-by-n box.

    ``g_values`` must be 1-Lipschitz on the box grid, and k must coarsen it
    so quasi-levels change by at most one across any two steps (both
    checked).  Components are taken with diagonals added.  When
    ``chain_start`` is given, the surround chain from its component advances
    through the unique outward adjacent component and stops when a component
    spans the box between two opposite sides (the finite stand-in for
    escaping to infinity), covers its whole level with ambiguity, or has no
    unique successor.
    """
    if n < 1:
        raise InputError("box side must be >= 1")
    if k < 1:
        raise InputError("k must be >= 1")
    values = [int(v) for v in g_values]
    if len(values) != n * n:
        raise InputError(f"expected {n*n} values, got {len(values)}")

    straight = grid([n, n], "l1")
    for (u, v) in straight.edges():
        if abs(values[u] - values[v]) > 1:
            raise InputError(
                f"g is not 1-Lipschitz: |g({u})-g({v})| > 1 across an edge"
            )
    quasi = [v // k for v in values]
    # pairs within distance 2 must change the quasi-level by at most 1
    for u in range(n * n):
        near = {u}
        for w in straight.adjacency[u]:
            near.add(w)
            near.update(straight.adjacency[w])
        for w in near:
            if abs(quasi[u] - quasi[w]) >= 2:
                raise InputError(
                    f"k={k} too small: quasi-level jumps by 2 within distance 2 "
                    f"(vertices {u},{w})"
                )

    diag = grid([n, n], "linf")
    comp_of = {}
    levels = {}
    for r in sorted(set(quasi)):
        member_ids = [v for v in range(n * n) if quasi[v] == r]
        sub, back = induced_subgraph(diag, member_ids)
        comps = []
        for comp in components(sub):
            full = tuple(sorted(back[v] for v in comp))
            comps.append(full)
            for v in full:
                comp_of[v] = (r, full)
        levels[r] = tuple(comps)

    chain = []
    stop_reason = None
    if chain_start is not None:
        if not (0 <= chain_start < n * n):
            raise InputError("chain_start out of range")
        prev_comp = None
        level, comp = comp_of[chain_start]
        while True:
            chain.append(SurroundStep(level, comp, len(comp)))
            if len(comp) == n * n:
                stop_reason = "full-level"
                break
            if _spans_box(n, comp):
                stop_reason = "boundary"
                break
            comp_set = set(comp)
            prev_set = set(prev_comp) if prev_comp else set()
            neighbors = set()
            for v in comp:
                for w in diag.adjacency[v]:
                    if w not in comp_set and w not in prev_set:
                        neighbors.add(comp_of[w])
            if not neighbors:
                stop_reason = "no-successor"
                break
            if len(neighbors) > 1:
                stop_reason = "ambiguous"
                break
            prev_comp = comp
            level, comp = next(iter(neighbors))

    return LevelSetReport(
        n=n,
        k=k,
        levels=tuple(sorted(levels.items())),
        chain=tuple(chain),
        stop_reason=stop_reason,
    )


# ---------------------------------------------------------------------------
# asymptotic-dimension colorings


@dataclass(frozen=True)
class ColoringScheme:
    """D+1 color classes partitioning the vertices, each split into pieces
    that should be B-bounded and pairwise s-separated."""

    d: int
    s: int
    b: int
    classes: tuple  # per color: tuple of pieces (sorted vertex tuples)


@dataclass(frozen=True)
class ColoringReport:
    valid: bool
    worst_piece_diameter: int
    min_inter_piece_distance: Optional[int]
    violation: Optional[str]


def verify_asdim_coloring(g: Graph, scheme: ColoringScheme) -> ColoringReport:
    """Exact check of both coloring conditions: piece diameter <= B inside
    every class, and distance >= s between pieces of the same class."""
    if len(scheme.classes) != scheme.d + 1:
        return ColoringReport(False, 0, None, "number of color classes is not D+1")
    seen = set()
    for pieces in scheme.classes:
        for piece in pieces:
            for v in piece:
                if v in seen:
                    return ColoringReport(False, 0, None, f"vertex {v} appears twice")
                seen.add(v)
    if seen != set(range(g.num_vertices)):
        return ColoringReport(False, 0, None, "classes do not partition the vertices")

    dist_rows = {}

    def dist(u, v):
        if u not in dist_rows:
            dist_rows[u] = bfs_distances(g, u)
        return dist_rows[u][v]

    worst_diam = 0
    min_gap = None
    violation = None
    for pieces in scheme.classes:
        for piece in pieces:
            for i, u in enumerate(piece):
                for v in piece[i + 1 :]:
                    worst_diam = max(worst_diam, dist(u, v))
        for i, p1 in enumerate(pieces):
            for p2 in pieces[i + 1 :]:
                gap = min(dist(u, v) for u in p1 for v in p2)
                min_gap = gap if min_gap is None else min(min_gap, gap)
    if worst_diam > scheme.b:
        violation = f"piece diameter {worst_diam} exceeds B={scheme.b}"
    elif min_gap is not None and min_gap < scheme.s:
        violation = f"pieces of one class at distance {min_gap} < s={scheme.s}"
    return ColoringReport(violation is None, worst_diam, min_gap, violation)
