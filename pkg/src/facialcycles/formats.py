"""PolytopeFile JSON (format 1).

V-representation::

    {"format": 1, "dim": 3, "vertices": [["0", "1/2", "1"], ...]}

Combinatorial form (no coordinates)::

    {"format": 1, "dim": 3, "facets": [[0, 1, 2, 3], ...],
     "vertex_count": 8, "lattice": [[[0], [1], ...], [[0, 1], ...], ...]}

``vertex_count`` and ``lattice`` (faces by dimension, 0..dim-1) are optional;
a given lattice must equal the one generated from the facets. Files carrying
both vertices and facets must agree. Rationals are strings ``"p"`` or ``"p/q"``
with ``q > 0``, never JSON numbers.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path

from .exceptions import InputError, NotALattice
from .geometry import FaceLattice, Polytope, build_face_lattice

FORMAT = 1
_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text, where: str) -> Fraction:
    if not isinstance(text, str):
        raise InputError(f"{where}: expected a rational string, got {json.dumps(text)}")
    m = _RATIONAL.match(text)
    if not m:
        raise InputError(f"{where}: {text!r} is not of the form p or p/q")
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise InputError(f"{where}: zero denominator in {text!r}")
    return Fraction(int(m.group(1)), q)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _int_list(obj, where: str) -> list:
    if not isinstance(obj, list) or not all(isinstance(v, int) and not isinstance(v, bool)
                                            for v in obj):
        raise InputError(f"{where}: expected a list of integers")
    return obj


def polytope_from_dict(data) -> Polytope:
    if not isinstance(data, dict):
        raise InputError("top level: expected a JSON object")
    if data.get("format") != FORMAT:
        raise InputError(f"format: expected {FORMAT}, got {json.dumps(data.get('format'))}")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError("dim: expected a positive integer")
    points = None
    if "vertices" in data:
        rows = data["vertices"]
        if not isinstance(rows, list) or not rows:
            raise InputError("vertices: expected a nonempty list of coordinate rows")
        points = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != dim:
                raise InputError(f"vertices[{i}]: expected {dim} coordinates")
            points.append(tuple(parse_rational(c, f"vertices[{i}][{k}]") for k, c in enumerate(row)))
    facets = None
    if "facets" in data:
        if not isinstance(data["facets"], list) or not data["facets"]:
            raise InputError("facets: expected a nonempty list")
        facets = [_int_list(f, f"facets[{i}]") for i, f in enumerate(data["facets"])]
    if points is None and facets is None:
        raise InputError("file needs 'vertices' or 'facets'")

    if facets is None:
        poly = Polytope.from_points(points)
        if poly.dim != dim:
            raise InputError(f"dim: file says {dim}, vertices span {poly.dim}")
        return poly

    count = data.get("vertex_count")
    if count is None:
        count = len(points) if points is not None else 1 + max((v for f in facets for v in f), default=-1)
    elif not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise InputError("vertex_count: expected a positive integer")
    for i, f in enumerate(facets):
        for k, v in enumerate(f):
            if not 0 <= v < count:
                raise InputError(f"facets[{i}][{k}]: vertex index {v} out of range 0..{count - 1}")
    lattice = build_face_lattice(facets, count, points)
    if lattice.polytope_dim != dim:
        raise NotALattice(f"dim: file says {dim}, facets generate dimension {lattice.polytope_dim}")
    if "lattice" in data:
        given = data["lattice"]
        if not isinstance(given, list):
            raise InputError("lattice: expected a list of face lists")
        norm = tuple(tuple(sorted(tuple(sorted(_int_list(f, f"lattice[{k}][{i}]")))
                                  for i, f in enumerate(fs)))
                     for k, fs in enumerate(given))
        if norm != lattice.faces_by_dim:
            raise NotALattice("lattice: does not match the closure of the facets")
    return Polytope(lattice, tuple(points) if points is not None else None)


def load_polytope(path):
    """Read a PolytopeFile; returns ``(polytope, sha256 hex digest of the bytes)``."""
    raw = Path(path).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 ({exc})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return polytope_from_dict(data), digest


def points_to_dict(points) -> dict:
    return {"format": FORMAT, "dim": len(points[0]),
            "vertices": [[format_rational(c) for c in p] for p in points]}


def lattice_to_dict(lattice: FaceLattice, with_lattice: bool = False) -> dict:
    out = {"format": FORMAT, "dim": lattice.polytope_dim,
           "vertex_count": lattice.vertex_count,
           "facets": [list(f) for f in lattice.facets]}
    if with_lattice:
        out["lattice"] = [[list(f) for f in fs] for fs in lattice.faces_by_dim]
    return out


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
