"""Shared helpers: seeded random graphs and brute-force oracles.

The oracles here are deliberately independent of the package's solvers:
plain itertools enumeration and dict-based DFS, no bitsets, no pruning.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from seplab import from_edges


def random_connected_graph(rng: random.Random, n: int, extra: int = 0):
    """Random tree on n vertices plus `extra` random non-edges turned edges."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    candidates = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    ]
    rng.shuffle(candidates)
    edges.update(candidates[:extra])
    return from_edges(n, sorted(edges))


def brute_components(n, adj, removed):
    seen = set(removed)
    comps = []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def brute_min_separator(g, c=Fraction(1, 2)):
    """Smallest valid c-balanced separator by raw enumeration (lex-first)."""
    n = g.num_vertices
    adj = {v: set(g.adjacency[v]) for v in range(n)}
    for k in range(n + 1):
        for cand in combinations(range(n), k):
            comps = brute_components(n, adj, cand)
            if all(len(comp) < c * n for comp in comps):
                return cand
    raise AssertionError("unreachable")


def brute_treewidth(g):
    """Exact treewidth by trying every elimination order (tiny graphs only)."""
    from itertools import permutations

    n = g.num_vertices
    best = n
    for order in permutations(range(n)):
        nbrs = {v: set(g.adjacency[v]) for v in range(n)}
        width = 0
        for v in order:
            width = max(width, len(nbrs[v]))
            for a in nbrs[v]:
                nbrs[a].discard(v)
            for a in nbrs[v]:
                for b in nbrs[v]:
                    if a != b:
                        nbrs[a].add(b)
            del nbrs[v]
        best = min(best, width)
        if best == 0:
            break
    return best


@pytest.fixture
def cycle6():
    return from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])


@pytest.fixture
def k4():
    return from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
