"""Command-line surface: batch experiments over graph files and families.

Every command is deterministic given its arguments and --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .coarse import hyperbolicity_delta, quotient_tree
from .constructive import (
    TreeDecomposition,
    bag_separator,
    hyperplane_separator,
    ttree_median_separator,
)
from .errors import CapacityError, GeodesicSearchError, InputError
from .formats import (
    load_graph,
    load_map,
    parse_balance,
    profile_csv_text,
    read_profile_csv,
    save_graph,
    separator_json,
    separator_json_text,
)
from .generators import (
    FamilySpec,
    binary_tree,
    comb,
    grid,
    hyperbolic_tiling_ball,
    lamplighter_ball,
    sierpinski,
    tree_product_ball,
)
from .graph import Graph
from .levelsets import ColoringScheme, quasi_level_components, verify_asdim_coloring
from .profile import fit_growth, run_profile
from .regmaps import map_distortion, verify_regular, verify_semi_regular
from .separator import (
    min_balanced_separator,
    product_bound_report,
    refine_to_c,
    treewidth_exact,
)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("SEPLAB_THREADS")
    return max(1, int(env)) if env else 1


def _emit(args, payload: dict, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.format == "text":
        for line in text_lines:
            print(line)
    else:
        raise InputError(f"--format {args.format} is not supported by this command")


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_generate(args):
    if args.family == "grid":
        g = grid([int(s) for s in args.sides.split(",")], args.metric)
    elif args.family == "binary_tree":
        g = binary_tree(args.depth)
    elif args.family == "tree_product_ball":
        g = tree_product_ball(args.k)
    elif args.family == "sierpinski":
        g = sierpinski(args.level)
    elif args.family == "hyperbolic_tiling_ball":
        g = hyperbolic_tiling_ball(args.p, args.q, args.r)
    elif args.family == "lamplighter_ball":
        g = lamplighter_ball(args.r)
    elif args.family == "comb":
        g = comb(args.width, args.height)
    else:
        raise InputError(f"unknown family {args.family!r}")
    save_graph(g, args.out)
    print(f"wrote {args.out}: {g.num_vertices} vertices, {g.num_edges} edges")


def _cmd_cut(args):
    g = load_graph(args.graph)
    sep = min_balanced_separator(g, parse_balance(args.c), budget=args.budget)
    if args.format == "text":
        print(
            f"cut size {sep.size} at c={args.c} "
            f"(max component {sep.max_component}, "
            f"{'certified' if sep.certified_optimal else 'best-found'})"
        )
        print("separator:", " ".join(map(str, sep.vertices)))
    else:
        print(separator_json_text(sep))


def _cmd_tw(args):
    g = load_graph(args.graph)
    res = treewidth_exact(g)
    _emit(
        args,
        {"width": res.width, "elimination_order": list(res.elimination_order)},
        [f"treewidth {res.width}", "order: " + " ".join(map(str, res.elimination_order))],
    )


def _min_fill_decomposition(g: Graph) -> TreeDecomposition:
    """Greedy elimination-order tree decomposition for the bag method."""
    from .graph import from_edges
    from .separator import _minfill_order

    _, order = _minfill_order(g)
    nbrs = [set(a) for a in g.adjacency]
    alive = set(range(g.num_vertices))
    cliques = []
    for v in order:
        nv = sorted(nbrs[v] & alive)
        cliques.append(tuple(sorted([v] + nv)))
        for i, x in enumerate(nv):
            for y in nv[i + 1 :]:
                nbrs[x].add(y)
                nbrs[y].add(x)
        alive.remove(v)
    # connect each bag to the first later bag containing its clique remainder
    edges = []
    for i, v in enumerate(order):
        rest = set(cliques[i]) - {v}
        if not rest:
            continue
        for j in range(i + 1, len(order)):
            if rest <= set(cliques[j]) or order[j] in rest:
                if rest <= set(cliques[j]):
                    edges.append((i, j))
                    break
        else:
            edges.append((i, len(order) - 1))
    tree = from_edges(len(cliques), sorted(set(edges)))
    return TreeDecomposition(tree, tuple(cliques))


def _cmd_separate(args):
    g = load_graph(args.graph)
    if args.method == "ttree":
        rep = ttree_median_separator(g, tau=args.tau)
        sep = rep.separator
        extra = {"fallback_fired": rep.fallback_fired, "threshold": rep.threshold}
    elif args.method == "hyperplane":
        sides = [int(s) for s in args.grid_sides.split(",")] if args.grid_sides else None
        sep = hyperplane_separator(g, trials=args.trials, seed=args.seed, grid_sides=sides)
        extra = {}
    elif args.method == "bag":
        sep = bag_separator(g, _min_fill_decomposition(g))
        extra = {}
    else:
        raise InputError(f"unknown method {args.method!r}")
    if args.format == "text":
        note = " (fallback)" if extra.get("fallback_fired") else ""
        print(f"{args.method} separator of size {sep.size}{note}, max component {sep.max_component}")
        print("separator:", " ".join(map(str, sep.vertices)))
    else:
        payload = separator_json(sep)
        payload.update(extra)
        print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_refine(args):
    g = load_graph(args.graph)
    sep = refine_to_c(g, parse_balance(args.c))
    print(separator_json_text(sep) if args.format != "text" else f"size {sep.size}")


def _cmd_product_bound(args):
    g = load_graph(args.graph_g)
    h = load_graph(args.graph_h)
    rep = product_bound_report(g, h, budget=args.budget)
    payload = {
        "cut_product": separator_json(rep.cut_product),
        "cutc_g": rep.cutc_g,
        "cutc_h": rep.cutc_h,
        "lhs_g": rep.lhs_g,
        "lhs_h": rep.lhs_h,
        "c": rep.c,
        "ratio_g": rep.ratio_g,
        "ratio_h": rep.ratio_h,
    }
    _emit(
        args,
        payload,
        [
            f"cut(GxH) = {rep.cut_product.size}",
            f"|H|*cut^c(G) = {rep.lhs_g}, |G|*cut^c(H) = {rep.lhs_h} at c = {rep.c:.6f}",
            f"ratios: {rep.ratio_g:.4f} (G side), {rep.ratio_h:.4f} (H side)",
        ],
    )


def _parse_family(args) -> FamilySpec:
    opts = {}
    for item in (args.options or "").split(","):
        if item:
            key, val = item.split("=")
            opts[key.strip()] = int(val)
    return FamilySpec(args.family, opts)


def _cmd_profile(args):
    spec = _parse_family(args)
    params = list(range(args.start, args.stop + 1))
    curve = run_profile(
        spec,
        params,
        c=parse_balance(args.c),
        method=args.method,
        seed=args.seed,
        threads=_threads(args),
    )
    text = profile_csv_text(curve)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({len(curve.points)} points)")
    else:
        sys.stdout.write(text)
    if curve.truncated:
        print("note: curve truncated at a capacity limit", file=sys.stderr)


def _cmd_fit(args):
    with open(args.csv) as fh:
        curve = read_profile_csv(fh)
    fit = fit_growth(curve)
    payload = {
        "class": fit.name,
        "alpha": fit.alpha,
        "residual": fit.residual,
        "runner_up": {
            "class": fit.runner_up.name,
            "alpha": fit.runner_up.alpha,
            "residual": fit.runner_up.residual,
        },
    }
    if args.plot:
        from .plotting import render_profile_svg

        with open(args.plot, "w") as fh:
            fh.write(render_profile_svg(curve, fit))
    _emit(
        args,
        payload,
        [
            f"best class: {fit.name}"
            + (f" (alpha={fit.alpha:.4f})" if fit.alpha is not None else ""),
            f"residual {fit.residual:.3e}; runner-up {fit.runner_up.name} "
            f"at {fit.runner_up.residual:.3e}",
        ],
    )


def _cmd_delta(args):
    g = load_graph(args.graph)
    delta = hyperbolicity_delta(g, method=args.method)
    _emit(
        args,
        {"delta": str(delta), "delta_float": float(delta), "method": args.method},
        [f"delta = {delta} ({args.method})"],
    )


def _cmd_quotient(args):
    g = load_graph(args.graph)
    qt = quotient_tree(g, args.root, args.delta)
    dist = map_distortion(qt.pi)
    payload = {
        "delta": qt.delta,
        "level_spacing": qt.level_spacing,
        "num_classes": len(qt.classes),
        "is_tree": qt.is_tree,
        "diagnostic": qt.diagnostic,
        "max_class_diameter": max(qt.class_diameters, default=0),
        "pi_contraction": dist.contraction,
    }
    _emit(
        args,
        payload,
        [
            f"{len(qt.classes)} classes at spacing {qt.level_spacing}; "
            f"tree: {qt.is_tree}" + (f" ({qt.diagnostic})" if qt.diagnostic else ""),
            f"pi contraction: {dist.contraction}",
        ],
    )


def _cmd_verify_map(args):
    m = load_map(args.map)
    payload = {}
    lines = []
    if args.kappa is not None:
        rep = verify_regular(m, args.kappa)
        payload.update(
            {
                "kappa": args.kappa,
                "passes": rep.passes,
                "kappa_lipschitz": rep.kappa_lipschitz,
                "kappa_cover": rep.kappa_cover,
            }
        )
        lines.append(
            f"regular at kappa={args.kappa}: {rep.passes} "
            f"(lipschitz needs {rep.kappa_lipschitz}, cover needs {rep.kappa_cover})"
        )
    if args.semi_r:
        radii = [int(r) for r in args.semi_r.split(",")]
        table = verify_semi_regular(m, radii)
        payload["lipschitz"] = table.lipschitz
        payload["c_table"] = {str(r): c for r, c in table.entries}
        lines.append(
            "semi-regular table: "
            + ", ".join(f"c({r})={c}" for r, c in table.entries)
            + f" (1-lipschitz: {table.lipschitz})"
        )
    if not payload:
        raise InputError("verify-map needs --kappa and/or --semi-r")
    _emit(args, payload, lines)


def _cmd_levelsets(args):
    n = args.n
    if args.function == "x":
        values = [x for x in range(n) for _ in range(n)]
    elif args.function == "half-sum":
        values = [(x + y) // 2 for x in range(n) for y in range(n)]
    else:
        raise InputError(f"unknown built-in function {args.function!r}")
    report = quasi_level_components(n, values, args.k, chain_start=args.chain_start)
    payload = {
        "levels": {
            str(r): sorted(len(c) for c in comps) for r, comps in report.levels
        },
        "chain": [{"level": s.level, "size": s.size} for s in report.chain],
        "stop_reason": report.stop_reason,
    }
    lines = [
        f"level {r}: {len(comps)} components "
        f"(sizes {sorted(len(c) for c in comps)})"
        for r, comps in report.levels
    ]
    if report.chain:
        lines.append(
            "chain sizes: "
            + " -> ".join(str(s.size) for s in report.chain)
            + f" (stop: {report.stop_reason})"
        )
    _emit(args, payload, lines)


def _cmd_asdim(args):
    g = load_graph(args.graph)
    with open(args.scheme) as fh:
        raw = json.load(fh)
    scheme = ColoringScheme(
        d=int(raw["D"]),
        s=int(raw["s"]),
        b=int(raw["B"]),
        classes=tuple(
            tuple(tuple(sorted(piece)) for piece in pieces) for pieces in raw["classes"]
        ),
    )
    rep = verify_asdim_coloring(g, scheme)
    _emit(
        args,
        {
            "valid": rep.valid,
            "worst_piece_diameter": rep.worst_piece_diameter,
            "min_inter_piece_distance": rep.min_inter_piece_distance,
            "violation": rep.violation,
        },
        [
            f"valid: {rep.valid}"
            + (f" ({rep.violation})" if rep.violation else ""),
            f"worst piece diameter {rep.worst_piece_diameter}, "
            f"min inter-piece distance {rep.min_inter_piece_distance}",
        ],
    )


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seplab",
        description="Separation profiles of graph families: exact and "
        "constructive balanced separators, hyperbolicity, quotient trees, "
        "and regular-map verification.",
    )
    parser.add_argument("--version", action="version", version=f"seplab {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    parser.add_argument(
        "--threads", type=int, default=None, help="worker threads (env SEPLAB_THREADS)"
    )
    parser.add_argument(
        "--format", choices=("json", "csv", "text"), default="text", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a family graph to a file")
    p.add_argument("--family", required=True)
    p.add_argument("--sides", default="5,5", help="grid sides, comma separated")
    p.add_argument("--metric", choices=("l1", "linf"), default="l1")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--level", type=int, default=2)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--q", type=int, default=5)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--width", type=int, default=5)
    p.add_argument("--height", type=int, default=5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("cut", help="minimum c-balanced separator of a graph file")
    p.add_argument("graph")
    p.add_argument("--c", default="1/2")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_cut)

    p = sub.add_parser("refine", help="iterated-halving separator for c < 1/2")
    p.add_argument("graph")
    p.add_argument("--c", default="1/4")
    p.set_defaults(func=_cmd_refine)

    p = sub.add_parser("tw", help="exact treewidth (desk scale)")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_tw)

    p = sub.add_parser("separate", help="constructive separators")
    p.add_argument("graph")
    p.add_argument("--method", choices=("ttree", "hyperplane", "bag"), required=True)
    p.add_argument("--tau", type=int, default=1)
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--grid-sides", default=None)
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("product-bound", help="compare cut(GxH) to the factor bounds")
    p.add_argument("graph_g")
    p.add_argument("graph_h")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_product_bound)

    p = sub.add_parser("profile", help="cut profile over a family")
    p.add_argument("--family", required=True)
    p.add_argument("--options", default="", help="family options, e.g. p=4,q=5")
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--stop", type=int, required=True)
    p.add_argument("--c", default="1/2")
    p.add_argument(
        "--method",
        default="exact",
        choices=("exact", "constructive:ttree", "constructive:hyperplane"),
    )
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("fit", help="fit a growth class to a profile CSV")
    p.add_argument("csv")
    p.add_argument("--plot", default=None, help="write an SVG plot here")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("delta", help="hyperbolicity constant")
    p.add_argument("graph")
    p.add_argument("--method", choices=("four_point", "thin_triangles"), default="four_point")
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("quotient", help="sphere-class quotient toward a tree")
    p.add_argument("graph")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser("verify-map", help="regularity/semi-regularity of a map file")
    p.add_argument("map")
    p.add_argument("--kappa", type=int, default=None)
    p.add_argument("--semi-r", default=None, help="radii, comma separated")
    p.set_defaults(func=_cmd_verify_map)

    p = sub.add_parser("levelsets", help="quasi-level components on a box")
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--function", choices=("x", "half-sum"), default="x")
    p.add_argument("--chain-start", type=int, default=None)
    p.set_defaults(func=_cmd_levelsets)

    p = sub.add_parser("asdim", help="verify a bounded-piece coloring scheme")
    p.add_argument("graph")
    p.add_argument("scheme", help="JSON file {D, s, B, classes: [[piece...]...]}")
    p.set_defaults(func=_cmd_asdim)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (InputError, CapacityError, GeodesicSearchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
