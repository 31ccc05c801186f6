"""Flat-file formats: graph files, map files, profile CSV, and the result
JSON schema emitted by the separator commands.
"""

from __future__ import annotations

import csv
import json
import os
from fractions import Fraction
from io import StringIO
from typing import TextIO, Union

from .errors import InputError
from .graph import Graph, GraphMap, from_edges
from .profile import ProfileCurve, ProfilePoint
from .separator import Balance, Separator


# ---------------------------------------------------------------------------
# graph files


def write_graph(g: Graph, fh: TextIO):
    """Text format: header "n m", edge lines "u v" (u < v), optional
    coordinate lines "c u x y" and label lines "l u <string>"."""
    fh.write(f"{g.num_vertices} {g.num_edges}\n")
    for u, v in g.edges():
        fh.write(f"{u} {v}\n")
    if g.coords is not None:
        for u, (x, y) in enumerate(g.coords):
            fh.write(f"c {u} {x!r} {y!r}\n")
    if g.labels is not None:
        for u, lbl in enumerate(g.labels):
            fh.write(f"l {u} {lbl}\n")


def read_graph(fh: TextIO) -> Graph:
    header = None
    edges = []
    coords = {}
    labels = {}
    for raw in fh:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"bad graph header: {line!r}")
            header = (int(parts[0]), int(parts[1]))
            continue
        if line.startswith("c "):
            _, u, x, y = line.split()
            coords[int(u)] = (float(x), float(y))
        elif line.startswith("l "):
            _, u, lbl = line.split(maxsplit=2)
            labels[int(u)] = lbl
        else:
            u, v = map(int, line.split())
            if not u < v:
                raise InputError(f"edge line must satisfy u < v: {line!r}")
            edges.append((u, v))
    if header is None:
        raise InputError("empty graph file")
    n, m = header
    if len(edges) != m:
        raise InputError(f"header announces {m} edges, found {len(edges)}")
    coord_list = None
    if coords:
        if set(coords) != set(range(n)):
            raise InputError("coordinate lines must cover every vertex")
        coord_list = [coords[u] for u in range(n)]
    label_list = None
    if labels:
        if set(labels) != set(range(n)):
            raise InputError("label lines must cover every vertex")
        label_list = [labels[u] for u in range(n)]
    return from_edges(n, edges, coord_list, label_list)


def save_graph(g: Graph, path: str):
    with open(path, "w") as fh:
        write_graph(g, fh)


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        return read_graph(fh)


# ---------------------------------------------------------------------------
# map files


def write_map(m: GraphMap, src_path: str, dst_path: str, fh: TextIO):
    """Header "src.graph dst.graph" (paths), then one "u v" line per source
    vertex."""
    fh.write(f"{src_path} {dst_path}\n")
    for u, v in enumerate(m.image):
        fh.write(f"{u} {v}\n")


def read_map(fh: TextIO, base_dir: str = ".") -> GraphMap:
    header = None
    pairs = {}
    for raw in fh:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"bad map header: {line!r}")
            header = parts
            continue
        u, v = map(int, line.split())
        pairs[u] = v
    if header is None:
        raise InputError("empty map file")
    src = load_graph(os.path.join(base_dir, header[0]))
    dst = load_graph(os.path.join(base_dir, header[1]))
    if set(pairs) != set(range(src.num_vertices)):
        raise InputError("map file must assign every source vertex exactly once")
    return GraphMap(src, dst, tuple(pairs[u] for u in range(src.num_vertices)))


def load_map(path: str) -> GraphMap:
    with open(path) as fh:
        return read_map(fh, os.path.dirname(path) or ".")


# ---------------------------------------------------------------------------
# profile CSV


def write_profile_csv(curve: ProfileCurve, fh: TextIO):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["family", "param", "n", "cut", "method", "certified"])
    for p in curve.points:
        writer.writerow(
            [curve.family, p.param, p.n, p.cut, p.method, "true" if p.certified else "false"]
        )


def read_profile_csv(fh: TextIO, c: Balance = Fraction(1, 2)) -> ProfileCurve:
    reader = csv.reader(fh)
    rows = [row for row in reader if row]
    if not rows or rows[0] != ["family", "param", "n", "cut", "method", "certified"]:
        raise InputError("bad profile CSV header")
    family = None
    points = []
    for row in rows[1:]:
        if len(row) != 6:
            raise InputError(f"bad profile CSV row: {row!r}")
        family = row[0] if family is None else family
        if row[0] != family:
            raise InputError("profile CSV mixes families")
        points.append(
            ProfilePoint(int(row[1]), int(row[2]), int(row[3]), row[4], row[5] == "true")
        )
    if family is None:
        raise InputError("profile CSV has no rows")
    return ProfileCurve(family, c, tuple(points))


def profile_csv_text(curve: ProfileCurve) -> str:
    buf = StringIO()
    write_profile_csv(curve, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# result JSON


def _format_balance(c: Balance) -> Union[str, float]:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, int):
        return f"{c}/1"
    return float(c)


def separator_json(sep: Separator) -> dict:
    """The fixed result schema for separator-producing commands."""
    return {
        "c": _format_balance(sep.c),
        "separator": list(sep.vertices),
        "size": sep.size,
        "max_component": sep.max_component,
        "certified_optimal": sep.certified_optimal,
        "method": sep.method,
    }


def separator_json_text(sep: Separator) -> str:
    return json.dumps(separator_json(sep), indent=2, sort_keys=True)


def parse_balance(text: str) -> Fraction:
    """Parse a rational balance parameter "p/q" (or a bare integer-free
    decimal like "0.5" exactly via Fraction)."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse balance parameter {text!r}") from exc
