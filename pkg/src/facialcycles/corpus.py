"""Test polytopes: simplices, cubes, cross-polytopes, cyclic and random ones."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .exceptions import InputError
from .geometry import affine_dimension, extreme_point_indices

FAMILIES = ("simplex", "cube", "crosspolytope", "cyclic", "random")
MAX_RANDOM_N = 40


def simplex(d: int) -> list:
    return [tuple(Fraction(0) for _ in range(d))] + [
        tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]


def cube(d: int) -> list:
    return [tuple(map(Fraction, p)) for p in itertools.product((0, 1), repeat=d)]


def crosspolytope(d: int) -> list:
    out = []
    for i in range(d):
        for s in (1, -1):
            out.append(tuple(Fraction(s if j == i else 0) for j in range(d)))
    return out


def cyclic(n: int, d: int) -> list:
    """``n`` points on the moment curve at t = 1..n."""
    return [tuple(Fraction(t ** k) for k in range(1, d + 1)) for t in range(1, n + 1)]


def random_polytope(d: int, n: int, seed: int, max_attempts: int = 100) -> list:
    """Vertices of the hull of ``n`` seeded small-denominator rational points."""
    for attempt in range(max_attempts):
        rng = random.Random(f"random-polytope:{d}:{n}:{seed}:{attempt}")
        pts = []
        for _ in range(n):
            p = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(d))
            if p not in pts:
                pts.append(p)
        if len(pts) <= d or affine_dimension(pts) != d:
            continue
        return [pts[i] for i in extreme_point_indices(pts)]
    raise InputError(f"no full-dimensional sample in {max_attempts} attempts")


def generate(family: str, dim: int, n=None, seed: int = 0) -> list:
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if not 2 <= dim <= 6:
        raise InputError(f"dimension {dim} outside 2..6")
    if family == "simplex":
        return simplex(dim)
    if family == "cube":
        return cube(dim)
    if family == "crosspolytope":
        return crosspolytope(dim)
    if n is None:
        raise InputError(f"family {family} needs --n")
    if n <= dim:
        raise InputError(f"need n > dim, got n={n}, dim={dim}")
    if family == "cyclic":
        return cyclic(n, dim)
    if n > MAX_RANDOM_N:
        raise InputError(f"random n={n} exceeds {MAX_RANDOM_N}")
    return random_polytope(dim, n, seed)


def file_stem(family: str, dim: int, n=None, seed: int = 0) -> str:
    if family == "cyclic":
        return f"cyclic{dim}_n{n}"
    if family == "random":
        return f"random{dim}_n{n}_s{seed}"
    return f"{family}{dim}"
