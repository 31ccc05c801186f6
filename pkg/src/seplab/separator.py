"""Exact computation of minimum c-balanced vertex separators, desk-scale
treewidth, and the product-cut report.

Capacity limits are fixed, documented constants; beyond them operations fail
loudly rather than silently approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import CapacityError, InputError
from .graph import Graph, as_vertex_set, components, is_connected

#: Largest instance solved by plain ordered enumeration; above this the same
#: search runs with connectivity and component-count pruning bounds.
EXHAUSTIVE_LIMIT = 30

#: Largest instance accepted by the elimination-ordering treewidth DP.
TREEWIDTH_LIMIT = 18

#: Skip the max-flow connectivity root bound above this size (cheap searches
#: at small k cover those instances anyway).
_CONNECTIVITY_LIMIT = 256

Balance = Union[Fraction, float]


@dataclass(frozen=True)
class BalanceReport:
    valid: bool
    max_component: int


@dataclass(frozen=True)
class Separator:
    """A vertex set submitted as a c-balanced cut of some graph."""

    vertices: tuple
    c: Balance
    max_component: int
    certified_optimal: bool
    method: str  # exhaustive | branch_and_bound | constructive | iterated

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class TreewidthResult:
    width: int
    elimination_order: tuple


def _check_balance(c: Balance):
    if not (0 < c < 1):
        raise InputError(f"balance parameter must lie in (0,1), got {c}")


def max_component_allowed(c: Balance, n: int) -> int:
    """Largest component size satisfying the strict bound size < c*n."""
    if isinstance(c, Fraction):
        return (c.numerator * n - 1) // c.denominator
    return math.ceil(c * n) - 1


def is_balanced_separator(g: Graph, cset, c: Balance = Fraction(1, 2)) -> BalanceReport:
    """Check that every component of g minus cset has size < c*|V(g)|."""
    _check_balance(c)
    comps = components(g, as_vertex_set(g, cset))
    largest = len(comps[0]) if comps else 0
    return BalanceReport(largest <= max_component_allowed(c, g.num_vertices), largest)


# ---------------------------------------------------------------------------
# bitset helpers


def _component_masks(adj, pool: int):
    """Yield bitmasks of the connected components inside the pool mask."""
    while pool:
        seed = pool & -pool
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            fm = frontier
            while fm:
                b = fm & -fm
                nxt |= adj[b.bit_length() - 1]
                fm ^= b
            frontier = nxt & pool & ~comp
            comp |= frontier
        pool &= ~comp
        yield comp


def _largest_component(adj, pool: int) -> int:
    return max((c.bit_count() for c in _component_masks(adj, pool)), default=0)


# ---------------------------------------------------------------------------
# vertex connectivity (root lower bound for the search)


def _max_flow_unit(n, arcs, source, sink) -> int:
    """Unit-capacity max flow via repeated BFS augmentation.

    arcs: dict (u, v) -> capacity over node-split indices.
    """
    from collections import deque

    cap = dict(arcs)
    out = {}
    for (u, v) in cap:
        out.setdefault(u, []).append(v)
        out.setdefault(v, [])  # residual arcs appear here
    flow = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v in out.get(u, ()):
                if v not in parent and cap.get((u, v), 0) > 0:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            return flow
        v = sink
        while parent[v] is not None:
            u = parent[v]
            cap[(u, v)] = cap.get((u, v), 0) - 1
            cap[(v, u)] = cap.get((v, u), 0) + 1
            if u not in out.get(v, ()):
                out.setdefault(v, []).append(u)
            v = u
        flow += 1


def _pair_connectivity(g: Graph, s: int, t: int) -> int:
    """Minimum number of internal vertices separating non-adjacent s, t."""
    arcs = {}
    for v in range(g.num_vertices):
        arcs[(2 * v, 2 * v + 1)] = 1 if v not in (s, t) else g.num_vertices
    for (u, v) in g.edges():
        arcs[(2 * u + 1, 2 * v)] = g.num_vertices
        arcs[(2 * v + 1, 2 * u)] = g.num_vertices
    return _max_flow_unit(2 * g.num_vertices, arcs, 2 * s + 1, 2 * t)


def vertex_connectivity(g: Graph) -> int:
    """Exact global vertex connectivity of a connected graph."""
    n = g.num_vertices
    if n <= 1:
        return 0
    adj_sets = [set(a) for a in g.adjacency]
    non_adjacent = [
        (u, v) for u in range(n) for v in range(u + 1, n) if v not in adj_sets[u]
    ]
    if not non_adjacent:
        return n - 1  # complete graph
    u0 = min(range(n), key=lambda v: (g.degree(v), v))
    best = n - 1
    for v in range(n):
        if v != u0 and v not in adj_sets[u0]:
            best = min(best, _pair_connectivity(g, u0, v))
    nbrs = g.adjacency[u0]
    for i, x in enumerate(nbrs):
        for y in nbrs[i + 1 :]:
            if y not in adj_sets[x]:
                best = min(best, _pair_connectivity(g, x, y))
    return best


# ---------------------------------------------------------------------------
# heuristic upper bound (bound and budget fallback only)


def _heuristic_separator(g: Graph, max_ok: int) -> tuple:
    n = g.num_vertices
    adj = g.neighbor_masks()
    full = (1 << n) - 1
    best = tuple(range(n))
    # BFS layer cuts from vertex 0 and from a far vertex
    from .graph import bfs_distances

    for root in {0, max(range(n), key=lambda v: bfs_distances(g, 0)[v])}:
        dist = bfs_distances(g, root)
        for layer in range(1, max(dist) + 1 if max(dist) > 0 else 1):
            cut = [v for v in range(n) if dist[v] == layer]
            if not cut or len(cut) >= len(best):
                continue
            mask = sum(1 << v for v in cut)
            if _largest_component(adj, full & ~mask) <= max_ok:
                best = tuple(sorted(cut))
    # greedy: repeatedly remove the highest-degree vertex of the biggest part
    removed = 0
    while True:
        comps = sorted(_component_masks(adj, full & ~removed), key=lambda c: -c.bit_count())
        if not comps or comps[0].bit_count() <= max_ok:
            break
        comp = comps[0]
        pick = max(
            (v for v in range(n) if comp >> v & 1),
            key=lambda v: ((adj[v] & comp).bit_count(), -v),
        )
        removed |= 1 << pick
    greedy = tuple(v for v in range(n) if removed >> v & 1)
    if 0 < len(greedy) < len(best):
        best = greedy
    return best


# ---------------------------------------------------------------------------
# exact search


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: Optional[int]):
        self.remaining = limit

    def spend(self) -> bool:
        if self.remaining is None:
            return True
        self.remaining -= 1
        return self.remaining >= 0


def _search_at_size(adj, n, k, max_ok, budget: _Budget):
    """Lexicographically first valid separator of exactly k vertices, or None.

    Candidates are restricted to vertices of currently oversized components:
    in a minimum separator no removal is wasted on an already-small component.
    """
    full = (1 << n) - 1
    found = None

    def rec(chosen, removed_mask, last):
        nonlocal found
        if found is not None or not budget.spend():
            return
        oversized = [c for c in _component_masks(adj, full & ~removed_mask) if c.bit_count() > max_ok]
        if not oversized:
            if len(chosen) == k:
                found = tuple(chosen)
            elif len(chosen) < k:
                # valid with fewer vertices: smaller round already covers it,
                # but accept defensively (still lexicographically first)
                found = tuple(chosen)
            return
        rem = k - len(chosen)
        if rem < len(oversized):
            return
        cand_mask = 0
        for c in oversized:
            if (c >> (last + 1)) == 0:
                return  # this component can no longer be touched
            cand_mask |= c
        cand_mask >>= last + 1
        v = last + 1
        while cand_mask:
            if cand_mask & 1:
                chosen.append(v)
                rec(chosen, removed_mask | (1 << v), v)
                chosen.pop()
                if found is not None:
                    return
            cand_mask >>= 1
            v += 1

    rec([], 0, -1)
    return found


def min_balanced_separator(
    g: Graph,
    c: Balance = Fraction(1, 2),
    budget: Optional[int] = None,
) -> Separator:
    """Smallest c-balanced separator; ties broken by lexicographically
    smallest vertex set.

    Instances with at most EXHAUSTIVE_LIMIT vertices run ordered enumeration
    by increasing cardinality; larger ones add connectivity and component
    pruning bounds (branch and bound).  ``budget`` caps the number of search
    nodes; when exceeded the best-found separator is returned with
    certified_optimal=False.
    """
    _check_balance(c)
    n = g.num_vertices
    if n == 0:
        raise InputError("empty graph")
    if not is_connected(g):
        raise InputError("min_balanced_separator requires a connected graph; split components first")
    method = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "branch_and_bound"
    max_ok = max_component_allowed(c, n)
    adj = g.neighbor_masks()
    full = (1 << n) - 1

    ub_set = _heuristic_separator(g, max_ok)
    lb = 1
    if method == "branch_and_bound" and n <= _CONNECTIVITY_LIMIT:
        # any valid cut either disconnects the graph (>= kappa) or removes
        # all but one undersized component (>= n - max_ok)
        lb = max(lb, min(vertex_connectivity(g), n - max_ok))
    tracker = _Budget(budget)
    for k in range(lb, len(ub_set) + 1):
        hit = _search_at_size(adj, n, k, max_ok, tracker)
        if tracker.remaining is not None and tracker.remaining < 0:
            mask = sum(1 << v for v in (hit or ub_set))
            largest = _largest_component(adj, full & ~mask)
            return Separator(tuple(hit or ub_set), c, largest, False, method)
        if hit is not None:
            mask = sum(1 << v for v in hit)
            largest = _largest_component(adj, full & ~mask)
            return Separator(hit, c, largest, True, method)
    # unreachable: the heuristic set itself is found at k = len(ub_set)
    raise AssertionError("search failed to terminate with a valid separator")


def refine_to_c(g: Graph, c: Balance) -> Separator:
    """Valid c-balanced separator built by iterated halving of oversized
    pieces (c <= 1/2); at c = 1/2 this is exactly min_balanced_separator."""
    _check_balance(c)
    if c > Fraction(1, 2):
        raise InputError("refine_to_c expects c <= 1/2")
    if c == Fraction(1, 2):
        return min_balanced_separator(g, c)
    n = g.num_vertices
    if n == 0:
        raise InputError("empty graph")
    if not is_connected(g):
        raise InputError("refine_to_c requires a connected graph")
    max_ok = max_component_allowed(c, n)
    chosen: set = set()
    from .graph import induced_subgraph

    while True:
        comps = components(g, tuple(sorted(chosen)))
        oversized = [comp for comp in comps if len(comp) > max_ok]
        if not oversized:
            break
        for comp in oversized:
            sub, back = induced_subgraph(g, comp)
            piece_cut = min_balanced_separator(sub, Fraction(1, 2))
            chosen.update(back[v] for v in piece_cut.vertices)
    vertices = tuple(sorted(chosen))
    report = is_balanced_separator(g, vertices, c)
    return Separator(vertices, c, report.max_component, False, "iterated")


# ---------------------------------------------------------------------------
# treewidth


def _minfill_order(g: Graph) -> tuple:
    """Greedy minimum-fill-in elimination; returns (width, order)."""
    n = g.num_vertices
    nbrs = [set(a) for a in g.adjacency]
    alive = set(range(n))
    width = 0
    order = []
    while alive:
        best_v, best_fill = None, None
        for v in sorted(alive):
            nv = nbrs[v] & alive
            fill = 0
            nv_list = sorted(nv)
            for i, x in enumerate(nv_list):
                for y in nv_list[i + 1 :]:
                    if y not in nbrs[x]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        nv = nbrs[best_v] & alive
        width = max(width, len(nv))
        nv_list = sorted(nv)
        for i, x in enumerate(nv_list):
            for y in nv_list[i + 1 :]:
                nbrs[x].add(y)
                nbrs[y].add(x)
        alive.remove(best_v)
        order.append(best_v)
    return width, tuple(order)


def _mmd_lower_bound(g: Graph) -> int:
    """Maximum over removals of the minimum degree (a treewidth lower bound)."""
    nbrs = [set(a) for a in g.adjacency]
    alive = set(range(g.num_vertices))
    lb = 0
    while alive:
        v = min(alive, key=lambda u: (len(nbrs[u] & alive), u))
        lb = max(lb, len(nbrs[v] & alive))
        alive.remove(v)
    return lb


def _back_degree(adj, eliminated: int, v: int) -> int:
    """Neighbors of the component of v inside eliminated+{v}, outside it."""
    inside = eliminated | (1 << v)
    comp = 1 << v
    frontier = comp
    reach = 0
    while frontier:
        nxt = 0
        fm = frontier
        while fm:
            b = fm & -fm
            nxt |= adj[b.bit_length() - 1]
            fm ^= b
        reach |= nxt
        frontier = nxt & inside & ~comp
        comp |= frontier
    return (reach & ~inside).bit_count()


def elimination_width(g: Graph, order) -> int:
    """Width realized by an elimination order (max back-degree at removal)."""
    adj = g.neighbor_masks()
    eliminated = 0
    width = 0
    for v in order:
        width = max(width, _back_degree(adj, eliminated, v))
        eliminated |= 1 << v
    return width


def treewidth_exact(g: Graph) -> TreewidthResult:
    """Exact treewidth by dynamic programming over elimination prefixes.

    Limited to TREEWIDTH_LIMIT vertices (state space 2^n)."""
    n = g.num_vertices
    if n == 0:
        raise InputError("empty graph")
    if n > TREEWIDTH_LIMIT:
        raise CapacityError(
            f"treewidth_exact supports at most {TREEWIDTH_LIMIT} vertices, got {n}"
        )
    ub_width, ub_order = _minfill_order(g)
    if _mmd_lower_bound(g) >= ub_width:
        return TreewidthResult(ub_width, ub_order)
    adj = g.neighbor_masks()
    size = 1 << n
    f = [0] * size
    choice = [0] * size
    for s in range(1, size):
        best = None
        best_v = -1
        rest = s
        while rest:
            b = rest & -rest
            v = b.bit_length() - 1
            rest ^= b
            w = max(f[s ^ b], _back_degree(adj, s ^ b, v))
            if best is None or w < best:
                best, best_v = w, v
        f[s] = best
        choice[s] = best_v
    order = []
    s = size - 1
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return TreewidthResult(f[size - 1], tuple(order))


# ---------------------------------------------------------------------------
# product bound


#: Balance parameter of the product-cut comparison.
PRODUCT_BALANCE = math.sqrt(7.0 / 8.0)


@dataclass(frozen=True)
class ProductBoundReport:
    cut_product: Separator
    cutc_g: int
    cutc_h: int
    lhs_g: int  # |h| * cut^c(g)
    lhs_h: int  # |g| * cut^c(h)
    c: float

    @property
    def ratio_g(self) -> float:
        return self.cut_product.size / self.lhs_g

    @property
    def ratio_h(self) -> float:
        return self.cut_product.size / self.lhs_h


def product_bound_report(
    g: Graph, h: Graph, budget: Optional[int] = None
) -> ProductBoundReport:
    """Measure cut(g x h) against |h|*cut^c(g) and |g|*cut^c(h) at
    c = sqrt(7/8); both ratios are reported, never asserted."""
    from .graph import cartesian_product

    product = cartesian_product(g, h)
    cut_product = min_balanced_separator(product, Fraction(1, 2), budget=budget)
    cutc_g = min_balanced_separator(g, PRODUCT_BALANCE, budget=budget).size
    cutc_h = min_balanced_separator(h, PRODUCT_BALANCE, budget=budget).size
    return ProductBoundReport(
        cut_product=cut_product,
        cutc_g=cutc_g,
        cutc_h=cutc_h,
        lhs_g=h.num_vertices * cutc_g,
        lhs_h=g.num_vertices * cutc_h,
        c=PRODUCT_BALANCE,
    )
