"""Acceptance suite: every criterion runs at its stated tolerance and prints
one pass/fail line.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import math
import random
from fractions import Fraction

import seplab as sl
import seplab.separator as sep_mod

from conftest import random_connected_graph


def report(number, ok, detail):
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_oracle_equivalence(monkeypatch):
    """500 seeded random connected graphs, 5-9 vertices: branch-and-bound cut
    equals exhaustive cut exactly."""
    rng = random.Random(1001)
    mismatches = 0
    for _ in range(500):
        n = rng.randrange(5, 10)
        g = random_connected_graph(rng, n, rng.randrange(8))
        exhaustive = sl.min_balanced_separator(g)
        monkeypatch.setattr(sep_mod, "EXHAUSTIVE_LIMIT", 0)
        bnb = sl.min_balanced_separator(g)
        monkeypatch.undo()
        if bnb.size != exhaustive.size or bnb.vertices != exhaustive.vertices:
            mismatches += 1
    report(1, mismatches == 0, f"500 graphs, {mismatches} mismatches")


def test_criterion_2_cut_vs_treewidth():
    """200 seeded random connected graphs up to 12 vertices: cut <= tw + 1."""
    rng = random.Random(2002)
    violations = 0
    for _ in range(200):
        n = rng.randrange(3, 13)
        g = random_connected_graph(rng, n, rng.randrange(10))
        cut = sl.min_balanced_separator(g).size
        tw = sl.treewidth_exact(g).width
        if cut > tw + 1:
            violations += 1
    report(2, violations == 0, f"200 graphs, {violations} violations of cut <= tw+1")


def test_criterion_3_grid_profile():
    """Exact square-grid cuts for k=2..6 fit a power law with alpha in
    [0.40, 0.60]."""
    curve = sl.run_profile(sl.FamilySpec("grid", {"dims": 2}), range(2, 7))
    assert all(p.certified for p in curve.points)
    fit = sl.fit_growth(curve)
    ok = fit.name == "power" and 0.40 <= fit.alpha <= 0.60
    report(3, ok, f"cuts={[p.cut for p in curve.points]} class={fit.name} alpha={fit.alpha:.3f}")


def test_criterion_4_tree_and_sierpinski():
    """Exact cut = 1 for binary trees of depth 2..8; cut <= 3 for the first
    five gasket levels."""
    bt = sl.run_profile(sl.FamilySpec("binary_tree"), range(2, 9))
    sp = sl.run_profile(sl.FamilySpec("sierpinski"), range(1, 6))
    ok = all(p.cut == 1 for p in bt.points) and all(p.cut <= 3 for p in sp.points)
    report(4, ok, f"tree cuts={[p.cut for p in bt.points]} gasket cuts={[p.cut for p in sp.points]}")


def test_criterion_5_tree_product():
    """Median separators on tree-product balls k=4..10: valid, within
    4n/log2(n), no fallback for k >= 6; exact cut of the k=3 ball >= 1."""
    ok = True
    details = []
    for k in range(4, 11):
        g = sl.tree_product_ball(k)
        n = g.num_vertices
        rep = sl.ttree_median_separator(g, tau=1)
        valid = sl.is_balanced_separator(g, rep.separator.vertices).valid
        within = rep.separator.size <= 4 * n / math.log2(n)
        no_fb = (not rep.fallback_fired) or k < 6
        ok = ok and valid and within and no_fb
        details.append(f"k={k}:{rep.separator.size}")
    exact = sl.min_balanced_separator(sl.tree_product_ball(3))
    ok = ok and exact.certified_optimal and exact.size >= max(1, 2**3 // 24)
    report(5, ok, f"sizes {' '.join(details)}; exact cut(k=3)={exact.size}")


def test_criterion_6_hyperbolic_hyperplanes():
    """Geodesic cuts on {4,5} balls r=3..6 with 64 seeded trials: valid and
    size/r stable within a factor of 3."""
    ratios = []
    ok = True
    for r in range(3, 7):
        g = sl.hyperbolic_tiling_ball(4, 5, r)
        s = sl.hyperplane_separator(g, trials=64, seed=7)
        valid = sl.is_balanced_separator(g, s.vertices, Fraction(2, 3)).valid
        ok = ok and valid
        ratios.append(s.size / r)
    spread = max(ratios) / min(ratios)
    ok = ok and spread <= 3
    report(6, ok, f"size/r ratios {['%.2f' % q for q in ratios]}, spread {spread:.2f}")


def test_criterion_7_product_bound():
    """cut(GxH) <= min(|H| cut(G), |G| cut(H)) verified exactly on three
    products; lower-direction ratios logged."""
    instances = [
        (sl.grid([4]), sl.grid([4]), "P4xP4"),
        (sl.grid([3]), sl.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]), "P3xC4"),
        (sl.grid([2]), sl.binary_tree(3), "P2xT3"),
    ]
    ok = True
    lines = []
    for g, h, name in instances:
        rep = sl.product_bound_report(g, h)
        cut_g = sl.min_balanced_separator(g).size
        cut_h = sl.min_balanced_separator(h).size
        upper = min(h.num_vertices * cut_g, g.num_vertices * cut_h)
        ok = ok and rep.cut_product.certified_optimal and rep.cut_product.size <= upper
        lines.append(
            f"{name}: cut={rep.cut_product.size} upper={upper} "
            f"ratios=({rep.ratio_g:.3f},{rep.ratio_h:.3f})"
        )
    report(7, ok, "; ".join(lines))


def test_criterion_8_quotient_tree():
    """Quotients: exact isomorphism on the depth-6 binary tree at delta=0;
    acyclic with unique downward neighbors and a contracting projection on
    the {4,5} ball at delta = ceil(four-point delta)."""
    host = sl.binary_tree(6)
    qt = sl.quotient_tree(host, 0, 0)
    mapping = {cls[0]: cid for cid, cls in enumerate(qt.classes)}
    host_edges = sorted(tuple(sorted((mapping[u], mapping[v]))) for u, v in host.edges())
    tree_ok = qt.is_tree and host_edges == sorted(qt.tree.edges())

    ball = sl.hyperbolic_tiling_ball(4, 5, 6)
    delta4 = sl.hyperbolicity_delta(ball, "four_point")
    delta = math.ceil(delta4)
    qt2 = sl.quotient_tree(ball, 0, delta)
    down_ok = True
    for cid in range(len(qt2.classes)):
        if qt2.class_levels[cid] == 0:
            continue
        downs = [
            w
            for w in qt2.tree.adjacency[cid]
            if qt2.class_levels[w] == qt2.class_levels[cid] - 1
        ]
        down_ok = down_ok and len(downs) == 1
    dist = sl.map_distortion(qt2.pi)
    ok = tree_ok and qt2.is_tree and down_ok and dist.contraction
    report(
        8,
        ok,
        f"binary tree iso={tree_ok}; ball delta={delta4} -> Delta={delta}, "
        f"acyclic={qt2.is_tree}, unique-down={down_ok}, contraction={dist.contraction}",
    )


def test_criterion_9_lamplighter_semi_regularity():
    """Marker projection of the radius-8 lamplighter ball: measured c(r) for
    r=1,2,3 within 2*r*2^r."""
    g = sl.lamplighter_ball(8)
    table = sl.verify_semi_regular(sl.lamplighter_position_map(g), [1, 2, 3])
    ok = table.lipschitz and all(c <= 2 * r * 2**r for r, c in table.entries)
    report(9, ok, f"c(r) table {table.entries} vs bounds {[2*r*2**r for r in (1,2,3)]}")


def test_criterion_10_quasi_levels():
    """g(x,y)=x gives exact width-4 strips on the 32x32 box; the half-sum
    surround chain grows strictly until boundary contact."""
    n = 32
    strips = sl.quasi_level_components(n, [x for x in range(n) for _ in range(n)], 4)
    strips_ok = len(strips.levels) == 8 and all(
        len(comps) == 1 and len(comps[0]) == 128 for _, comps in strips.levels
    )
    chain_rep = sl.quasi_level_components(
        n, [(x + y) // 2 for x in range(n) for y in range(n)], 4, chain_start=0
    )
    sizes = [s.size for s in chain_rep.chain]
    chain_ok = (
        len(sizes) >= 2
        and all(a < b for a, b in zip(sizes, sizes[1:]))
        and chain_rep.stop_reason == "boundary"
    )
    report(10, strips_ok and chain_ok, f"strips ok={strips_ok}; chain sizes {sizes}")


def test_criterion_11_regular_map_suite():
    """Identity is 1-regular on 20 random graphs; the constant map fails the
    cover condition; 50 seeded pullback instances all balanced."""
    rng = random.Random(1111)
    ident_ok = all(
        sl.verify_regular(
            sl.identity_map(random_connected_graph(rng, rng.randrange(3, 14), rng.randrange(8))),
            1,
        ).passes
        for _ in range(20)
    )
    const = sl.GraphMap(sl.grid([20]), sl.from_edges(1, []), (0,) * 20)
    const_rep = sl.verify_regular(const, 3)
    const_ok = (not const_rep.passes) and (not const_rep.condition2_ok)

    failures = 0
    for i in range(50):
        kind = i % 3
        if kind == 0:
            src = random_connected_graph(rng, rng.randrange(6, 15), rng.randrange(6))
            m = sl.identity_map(src)
        elif kind == 1:
            b = rng.randrange(2, 4)
            size = rng.randrange(12, 25)
            m = sl.GraphMap(
                sl.grid([size]),
                sl.grid([(size + b - 1) // b]),
                tuple(v // b for v in range(size)),
            )
        else:
            a, b = rng.randrange(3, 5), rng.randrange(3, 5)
            g = sl.grid([a, b])
            m = sl.GraphMap(g, sl.grid([a]), tuple(v // b for v in range(a * b)))
        probe = sl.verify_regular(m, 1)
        kappa = max(probe.kappa_lipschitz, probe.kappa_cover)
        # grow a random connected subgraph of the source
        start = rng.randrange(m.source.num_vertices)
        want = rng.randrange(2, m.source.num_vertices + 1)
        grown = [start]
        seen = {start}
        while len(grown) < want:
            frontier = sorted(
                w for v in grown for w in m.source.adjacency[v] if w not in seen
            )
            if not frontier:
                break
            pick = rng.choice(frontier)
            seen.add(pick)
            grown.append(pick)
        a_set = tuple(sorted(grown))
        # target separator on the 2k-neighborhood of the image, refined per
        # the degree formula so the pullback guarantee applies
        s0 = {m.image[v] for v in a_set}
        frontier = set(s0)
        for _ in range(2 * kappa):
            frontier = {w for y in frontier for w in m.target.adjacency[y]} - s0
            s0 |= frontier
        sub, back = sl.induced_subgraph(m.target, sorted(s0))
        d = max(m.source.max_degree(), m.target.max_degree())
        c_target = Fraction(1, 2 * kappa * (d + 1) ** (2 * kappa + 1))
        refined = sl.refine_to_c(sub, min(Fraction(1, 2), c_target))
        sep = sl.Separator(
            tuple(sorted(back[v] for v in refined.vertices)),
            refined.c,
            refined.max_component,
            False,
            "iterated",
        )
        try:
            pb = sl.pullback_separator(m, kappa, a_set, sep)
        except sl.InputError:
            failures += 1
            continue
        n_a = len(a_set)
        check_c = Fraction(n_a + 1, 2 * n_a) if n_a > 1 else Fraction(1, 2)
        sub_a, back_a = sl.induced_subgraph(m.source, a_set)
        local = tuple(sorted(back_a.index(v) for v in pb.vertices))
        if n_a > 1 and not sl.is_balanced_separator(sub_a, local, check_c).valid:
            failures += 1
    pull_ok = failures == 0
    report(
        11,
        ident_ok and const_ok and pull_ok,
        f"identity 20/20={ident_ok}, constant fails cover={const_ok}, "
        f"pullback failures={failures}/50",
    )


def test_criterion_12_fit_self_consistency():
    """Exact synthetic data from each growth class classifies correctly."""
    from seplab.profile import ProfileCurve, ProfilePoint

    datasets = {
        "bounded": [(16, 3), (64, 3), (256, 3), (1024, 3)],
        "logarithmic": [(16, 4), (64, 6), (256, 8), (1024, 10)],
        "power": [(16, 4), (64, 8), (256, 16), (1024, 32)],
        "linear": [(16, 32), (64, 128), (256, 512), (1024, 2048)],
        "n_over_log": [(16, 4), (256, 32), (65536, 4096), (2**32, 2**27)],
        "power_times_log": [(16, 16), (64, 48), (256, 128), (1024, 320)],
    }
    got = {}
    for name, pts in datasets.items():
        curve = ProfileCurve(
            "synthetic",
            Fraction(1, 2),
            tuple(ProfilePoint(i, n, c, "exact", True) for i, (n, c) in enumerate(pts)),
        )
        got[name] = sl.fit_growth(curve).name
    correct = sum(1 for name in datasets if got[name] == name)
    report(12, correct == 6, f"{correct}/6 classified correctly ({got})")
