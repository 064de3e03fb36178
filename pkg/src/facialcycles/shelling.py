"""Line shellings and checks of the shelling conditions that can be decided locally."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .complex import PolytopalComplex, graph_of, is_strongly_connected, prefix_complex
from .exceptions import GenericityExhausted, NotRealized, ShellingCheckFailed
from .geometry import FaceLattice, _mask, as_points, facet_as_polytope, facet_hyperplanes

MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class LineCertificate:
    base_point: tuple
    direction: tuple
    pierce_params: tuple  # one per facet, in lattice facet order


@dataclass(frozen=True)
class StepReport:
    """Checks on ``F_j`` against the union of earlier facets.

    ``None`` marks a check that is vacuous in the dimension at hand.
    """

    step_index: int
    intersection_nonempty: bool
    intersection_pure_codim2: bool
    intersection_strongly_connected: Optional[bool]
    prefix_strongly_connected: bool
    intersection_graph_connected: Optional[bool]

    @property
    def ok(self) -> bool:
        return (self.intersection_nonempty and self.intersection_pure_codim2
                and self.intersection_strongly_connected is not False
                and self.prefix_strongly_connected
                and self.intersection_graph_connected is not False)


@dataclass(frozen=True)
class Shelling:
    order: tuple
    certificate: Optional[LineCertificate]
    per_step_reports: tuple

    @property
    def valid(self) -> bool:
        return all(r.ok for r in self.per_step_reports)


def _intersection_complex(lattice: FaceLattice, new: int, earlier: list) -> PolytopalComplex:
    faces = {}
    for k, (fs, ms) in enumerate(zip(lattice.faces_by_dim, lattice.masks_by_dim)):
        for f, m in zip(fs, ms):
            if m & ~new == 0 and any(m & ~e == 0 for e in earlier):
                faces[f] = k
    return PolytopalComplex.from_faces(faces, lattice.vertex_count)


def verify_shelling_necessary(lattice: FaceLattice, order: Sequence[int]) -> list:
    """Step reports for positions 2..s of a facet ordering.

    Only necessary conditions are checked: each new facet meets its
    predecessors in a nonempty, pure, strongly connected (d-2)-complex whose
    graph is connected, and every prefix is strongly connected.
    """
    order = list(order)
    s = len(lattice.facets)
    if sorted(order) != list(range(s)):
        raise ValueError(f"order is not a permutation of 0..{s - 1}")
    d = lattice.polytope_dim
    masks = [_mask(lattice.facets[i]) for i in order]
    reports = []
    for j in range(2, s + 1):
        new, earlier = masks[j - 1], masks[: j - 1]
        meet = _intersection_complex(lattice, new, earlier)
        nonempty = bool(meet.faces)
        pure = nonempty and meet.dim == d - 2 and meet.is_pure()
        if d - 2 >= 1:
            strong = pure and is_strongly_connected(meet)
            graph_ok = nonempty and meet.dim >= 1 and graph_of(meet).is_connected()
        else:
            strong = None
            graph_ok = None
        prefix_ok = is_strongly_connected(prefix_complex(lattice, order, j))
        reports.append(StepReport(j, nonempty, pure, strong, prefix_ok, graph_ok))
    return reports


def _direction(seed: int, attempt: int, d: int) -> tuple:
    rng = random.Random(f"line-shelling:{seed}:{attempt}")
    return tuple(Fraction(rng.randint(-16, 16), rng.randint(1, 16)) for _ in range(d))


def line_shelling(lattice: FaceLattice, points: Sequence, seed: int = 0,
                  max_attempts: int = MAX_ATTEMPTS) -> Shelling:
    """Bruggesser-Mani shelling from a generic line through the vertex centroid."""
    if points is None:
        raise NotRealized("a line shelling needs vertex coordinates")
    pts = as_points(points)
    planes = facet_hyperplanes(lattice, pts)
    d = lattice.polytope_dim
    n = len(pts)
    centre = tuple(sum((p[i] for p in pts), Fraction(0)) / n for i in range(d))
    heights = [-h.eval(centre) for h in planes]  # all > 0
    if any(x <= 0 for x in heights):
        raise NotRealized("vertex centroid is not interior")

    for attempt in range(max_attempts):
        v = _direction(seed, attempt, d)
        rates = [sum((a * x for a, x in zip(h.normal, v)), Fraction(0)) for h in planes]
        if any(r == 0 for r in rates):
            continue
        ts = [hgt / r for hgt, r in zip(heights, rates)]
        if len(set(ts)) != len(ts):
            continue
        idx = range(len(ts))
        order = (sorted((i for i in idx if ts[i] > 0), key=ts.__getitem__)
                 + sorted((i for i in idx if ts[i] < 0), key=ts.__getitem__))
        reports = verify_shelling_necessary(lattice, order)
        bad = [r for r in reports if not r.ok]
        if bad:
            raise ShellingCheckFailed(f"line shelling failed verification at step {bad[0].step_index}")
        cert = LineCertificate(centre, v, tuple(ts))
        return Shelling(tuple(order), cert, tuple(reports))
    raise GenericityExhausted(f"no generic direction in {max_attempts} attempts (seed {seed})")


def shelling_for_facet(lattice: FaceLattice, points: Sequence, facet_index: int,
                       seed: int = 0) -> Shelling:
    """Line shelling of one facet, in the facet's own vertex numbering."""
    sub_lattice, sub_points = facet_as_polytope(lattice, points, facet_index)
    return line_shelling(sub_lattice, sub_points, seed)
