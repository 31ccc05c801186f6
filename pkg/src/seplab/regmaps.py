"""Verification and use of regular and semi-regular maps between graphs:
distortion measurement, the two regularity conditions, preimage tables,
separator pullback, and the part-membership map of a strong tree
decomposition.

Unit balls are closed balls in the graph metric (center plus neighbors), on
both the source and target side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CapacityError, DecompositionError, InputError
from .graph import (
    UNREACHABLE,
    Graph,
    GraphMap,
    as_vertex_set,
    bfs_distances,
    components,
    induced_subgraph,
    is_connected,
)
from .separator import Separator

#: Exact set-cover search is guaranteed only up to this cover size.
COVER_LIMIT = 12


# ---------------------------------------------------------------------------
# distortion


@dataclass(frozen=True)
class DistortionReport:
    multiplicative: Optional[float]
    additive: Optional[float]
    contraction: bool
    satisfiable: bool
    pairs_checked: int


def _sampled_pairs(n: int, sample: Optional[int], seed: int):
    if sample is None:
        for u in range(n):
            for v in range(u + 1, n):
                yield u, v
        return
    rng = random.Random(seed)
    for _ in range(sample):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            yield min(u, v), max(u, v)


def map_distortion(
    m: GraphMap, sample: Optional[int] = None, seed: int = 0
) -> DistortionReport:
    """Smallest integer kappa fitting the two-sided distance sandwich
    kappa^-1*dX - kappa <= dY <= kappa*dX + kappa over the sampled pairs,
    then the smallest additive slack at that multiplicative constant, plus a
    contraction verdict.

    A map collapsing every sampled pair to target distance zero while the
    source pairs are separated admits no meaningful multiplicative constant
    (the required kappa grows with the source); such maps are reported as
    unsatisfiable.
    """
    if not is_connected(m.source) or not is_connected(m.target):
        raise InputError("map_distortion requires connected graphs")
    n = m.source.num_vertices
    dist_target = [bfs_distances(m.target, y) for y in range(m.target.num_vertices)]

    contraction = True
    has_positive_target = False
    pairs = []
    dist_cache = {}
    for u, v in _sampled_pairs(n, sample, seed):
        if u not in dist_cache:
            dist_cache[u] = bfs_distances(m.source, u)
        dx = dist_cache[u][v]
        dy = dist_target[m.image[u]][m.image[v]]
        pairs.append((dx, dy))
        if dy > dx:
            contraction = False
        if dy > 0:
            has_positive_target = True
    if not pairs:
        return DistortionReport(1.0, 0.0, True, True, 0)
    if not has_positive_target:
        if any(dx > 0 for dx, _ in pairs):
            return DistortionReport(None, None, contraction, False, len(pairs))
        return DistortionReport(1.0, 0.0, contraction, True, len(pairs))
    # per pair: dY <= k*dX + k needs k >= dY/(dX+1);
    # dX <= k*(dY + k) needs k >= (-dY + sqrt(dY^2 + 4 dX)) / 2
    import math

    need = 1.0
    for dx, dy in pairs:
        need = max(need, dy / (dx + 1))
        need = max(need, (-dy + math.sqrt(dy * dy + 4.0 * dx)) / 2.0)
    mult = float(math.ceil(need - 1e-9))
    additive = 0.0
    for dx, dy in pairs:
        additive = max(additive, dy - mult * dx, dx / mult - dy)
    return DistortionReport(mult, max(additive, 0.0), contraction, True, len(pairs))


# ---------------------------------------------------------------------------
# regularity


@dataclass(frozen=True)
class RegularityReport:
    kappa_lipschitz: Optional[int]  # smallest kappa satisfying condition (1)
    kappa_cover: Optional[int]  # smallest kappa satisfying condition (2)
    requested_kappa: int
    condition1_ok: bool
    condition2_ok: bool

    @property
    def passes(self) -> bool:
        return self.condition1_ok and self.condition2_ok


def _closed_ball(g: Graph, center: int) -> frozenset:
    return frozenset((center,) + g.adjacency[center])


def _min_ball_cover(g: Graph, universe: frozenset, cap: int) -> int:
    """Exact minimum number of closed unit balls of g covering universe."""
    if not universe:
        return 0
    candidates = {}
    for x in range(g.num_vertices):
        hit = _closed_ball(g, x) & universe
        if hit:
            candidates[x] = hit
    # drop dominated candidate balls (deterministically: keep lowest center)
    kept = []
    for x in sorted(candidates):
        hx = candidates[x]
        if not any(hx < candidates[y] or (hx == candidates[y] and y < x) for y in kept):
            kept.append(x)
    sets = [candidates[x] for x in kept]

    # greedy upper bound
    ub_sets = []
    left = set(universe)
    while left:
        best = max(range(len(sets)), key=lambda i: (len(sets[i] & left), -i))
        if not sets[best] & left:
            return len(universe) + 1  # unreachable: every element has a ball
        ub_sets.append(best)
        left -= sets[best]
    ub = len(ub_sets)

    best = ub

    def rec(uncovered, used):
        nonlocal best
        if not uncovered:
            best = min(best, used)
            return
        if used + 1 >= best:
            return
        pivot = min(
            uncovered,
            key=lambda e: (sum(1 for s in sets if e in s), e),
        )
        for i, s in enumerate(sets):
            if pivot in s:
                rec(uncovered - s, used + 1)

    rec(frozenset(universe), 0)
    if best > cap:
        raise CapacityError(
            f"minimum ball cover exceeds the exact-search capacity {cap}"
        )
    return best


def verify_regular(m: GraphMap, kappa: int) -> RegularityReport:
    """Check both regularity conditions and report the smallest passing
    constants.

    Condition (1) is the linear distance bound, checked over all pairs.
    Condition (2) asks that the preimage of every closed unit ball of the
    target be coverable by kappa closed unit balls of the source; covers are
    computed exactly (guaranteed up to COVER_LIMIT).
    """
    if kappa < 1:
        raise InputError("kappa must be >= 1")
    src, dst = m.source, m.target
    dist_dst = [bfs_distances(dst, y) for y in range(dst.num_vertices)]

    kappa1: Optional[int] = 0
    for u in range(src.num_vertices):
        du = bfs_distances(src, u)
        for v in range(u + 1, src.num_vertices):
            dy = dist_dst[m.image[u]][m.image[v]]
            if dy == UNREACHABLE:
                kappa1 = None
                break
            if du[v] == UNREACHABLE:
                continue  # different source components impose no constraint
            need = -(-dy // (1 + du[v]))  # ceil
            kappa1 = max(kappa1, need)
        if kappa1 is None:
            break
    if kappa1 == 0:
        kappa1 = 1

    kappa2 = 0
    fibers = {}
    for u, y in enumerate(m.image):
        fibers.setdefault(y, set()).add(u)
    for y in range(dst.num_vertices):
        universe = set()
        for z in (y,) + dst.adjacency[y]:
            universe |= fibers.get(z, set())
        kappa2 = max(kappa2, _min_ball_cover(src, frozenset(universe), COVER_LIMIT))
    kappa2 = max(kappa2, 1)

    return RegularityReport(
        kappa_lipschitz=kappa1,
        kappa_cover=kappa2,
        requested_kappa=kappa,
        condition1_ok=kappa1 is not None and kappa1 <= kappa,
        condition2_ok=kappa2 <= kappa,
    )


# ---------------------------------------------------------------------------
# semi-regularity


@dataclass(frozen=True)
class SemiRegularityTable:
    lipschitz: bool  # d(f u, f v) <= 1 across every source edge
    entries: tuple  # ((r, c_r), ...) in the requested order


def verify_semi_regular(m: GraphMap, r_values: Sequence) -> SemiRegularityTable:
    """Exact c(r) table: the largest diameter of a connected component of the
    preimage of any open r-ball of the target (vertices at distance < r)."""
    src, dst = m.source, m.target
    lipschitz = all(
        bfs_distances(dst, m.image[u])[m.image[v]] <= 1 for u, v in src.edges()
    )
    dist_src = [bfs_distances(src, v) for v in range(src.num_vertices)]
    entries = []
    for r in r_values:
        if r < 1:
            raise InputError("radii must be positive")
        worst = 0
        for y in range(dst.num_vertices):
            dy = bfs_distances(dst, y)
            pre = [u for u in range(src.num_vertices) if 0 <= dy[m.image[u]] < r]
            if not pre:
                continue
            sub, back = induced_subgraph(src, pre)
            for comp in components(sub):
                members = [back[v] for v in comp]
                diam = max(
                    dist_src[a][b] for a in members for b in members
                )
                worst = max(worst, diam)
        entries.append((int(r), worst))
    return SemiRegularityTable(lipschitz, tuple(entries))


# ---------------------------------------------------------------------------
# separator pullback


def pullback_separator(
    m: GraphMap, kappa: int, a, sep_target: Separator
) -> Separator:
    """Pull a separator back through a verified kappa-regular map.

    ``a`` must induce a connected subgraph of the source; ``sep_target``
    should separate the 2*kappa-neighborhood of the image of ``a`` into
    sufficiently small pieces.  The result is the preimage of the
    2*kappa-neighborhood of sep_target intersected with ``a``; its components
    are guaranteed at most |a|/2 (non-strict) and the size is bounded by
    kappa*(d+1)^(2*kappa+1)*|sep_target| for maximum degree d.
    """
    report = verify_regular(m, kappa)
    if not report.passes:
        raise InputError(
            f"map is not verified {kappa}-regular "
            f"(needs kappa >= {report.kappa_lipschitz}/{report.kappa_cover})"
        )
    a = as_vertex_set(m.source, a)
    if not a:
        raise InputError("subgraph selection is empty")
    sub, back = induced_subgraph(m.source, a)
    if not is_connected(sub):
        raise InputError("selection does not induce a connected subgraph")

    # 2*kappa-neighborhood of the target separator
    frontier = set(sep_target.vertices)
    s0 = set(frontier)
    for _ in range(2 * kappa):
        frontier = {
            w for y in frontier for w in m.target.adjacency[y]
        } - s0
        s0 |= frontier

    chosen = tuple(sorted(v for v in a if m.image[v] in s0))
    local = {old: new for new, old in enumerate(back)}
    comps = components(sub, tuple(sorted(local[v] for v in chosen)))
    largest = len(comps[0]) if comps else 0
    if 2 * largest > len(a):
        raise InputError(
            "target separator too weak: pulled-back components exceed half of |a|"
        )
    return Separator(chosen, Fraction(1, 2), largest, False, "constructive")


# ---------------------------------------------------------------------------
# strong tree decompositions


@dataclass(frozen=True)
class StrongTreeDecomposition:
    """A tree with one nonempty part per node, partitioning the host."""

    tree: Graph
    parts: tuple  # tuple of sorted vertex tuples


def validate_strong_decomposition(g: Graph, std: StrongTreeDecomposition):
    t = std.tree
    if len(std.parts) != t.num_vertices:
        raise DecompositionError("one part required per tree node")
    if t.num_vertices == 0 or not is_connected(t) or t.num_edges != t.num_vertices - 1:
        raise DecompositionError("decomposition graph is not a tree")
    seen = {}
    for i, part in enumerate(std.parts):
        if not part:
            raise DecompositionError(f"part {i} is empty")
        for v in part:
            if v in seen:
                raise DecompositionError(f"vertex {v} appears in parts {seen[v]} and {i}")
            seen[v] = i
    if set(seen) != set(range(g.num_vertices)):
        raise DecompositionError("parts do not partition the host vertices")
    adj = [set(t.adjacency[i]) for i in range(t.num_vertices)]
    for (u, v) in g.edges():
        iu, iv = seen[u], seen[v]
        if iu != iv and iv not in adj[iu]:
            raise DecompositionError(
                f"edge ({u},{v}) joins parts {iu},{iv} which are not adjacent in the tree"
            )


@dataclass(frozen=True)
class StrongMapResult:
    map: GraphMap
    report: RegularityReport

    @property
    def achieved_kappa(self) -> int:
        return max(self.report.kappa_lipschitz, self.report.kappa_cover)


def strong_td_to_tree_map(g: Graph, std: StrongTreeDecomposition) -> StrongMapResult:
    """The part-membership map into the decomposition tree, with its
    regularity report (the achieved kappa is what ball covers require)."""
    validate_strong_decomposition(g, std)
    image = [0] * g.num_vertices
    for i, part in enumerate(std.parts):
        for v in part:
            image[v] = i
    m = GraphMap(g, std.tree, tuple(image))
    probe = verify_regular(m, 1)
    kappa = max(probe.kappa_lipschitz or 1, probe.kappa_cover or 1)
    return StrongMapResult(m, verify_regular(m, kappa))
