"""Exact rational geometry: facets from vertex coordinates and face lattices.

Coordinates are ``fractions.Fraction``. Internally the point set is scaled to
integer coordinates (a uniform scaling, so combinatorics are unchanged) and all
predicates are evaluated with Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, islice
from math import factorial, gcd, lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from .exceptions import (
    DuplicatePoint,
    MixedDimensions,
    NonVertexPoint,
    NotALattice,
    NotFullDimensional,
    NotRealized,
)

Point = tuple  # tuple of Fraction


def as_point(coords: Iterable) -> Point:
    return tuple(Fraction(c) for c in coords)


def as_points(points: Iterable[Iterable]) -> tuple:
    pts = tuple(as_point(p) for p in points)
    if pts:
        d = len(pts[0])
        for p in pts:
            if len(p) != d:
                raise MixedDimensions(f"points of length {d} and {len(p)} mixed")
    return pts


@dataclass(frozen=True)
class Hyperplane:
    """The set ``normal . x == offset``; the polytope lies where ``eval <= 0``."""

    normal: tuple
    offset: Fraction

    def eval(self, p) -> Fraction:
        return sum((a * x for a, x in zip(self.normal, p)), Fraction(0)) - self.offset


# -- integer linear algebra -------------------------------------------------


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _primitive(v: list) -> list:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    return v


def _reduce(basis: list, v: list) -> list:
    # basis rows are (pivot, row) pairs with row[pivot] != 0
    for p, row in basis:
        if v[p]:
            a, b = row[p], v[p]
            v = [a * x - b * y for x, y in zip(v, row)]
    return v


def _insert(basis: list, v: list) -> bool:
    v = _reduce(basis, v)
    for i, x in enumerate(v):
        if x:
            basis.append((i, _primitive(v)))
            return True
    return False


def _rank(rows: Iterable[Sequence]) -> int:
    basis: list = []
    for r in rows:
        _insert(basis, _to_int_row(r))
    return len(basis)


def _to_int_row(r: Sequence) -> list:
    dens = [x.denominator if isinstance(x, Fraction) else 1 for x in r]
    m = lcm(*dens) if dens else 1
    return [int(x * m) for x in r]


def _det(m: list) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri = a[i]
            rk = a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _normal(rows: list) -> list:
    """Generalized cross product of d-1 integer rows of length d."""
    d = len(rows) + 1
    out = []
    for i in range(d):
        minor = [r[:i] + r[i + 1:] for r in rows]
        det = _det(minor)
        out.append(-det if i % 2 else det)
    return _primitive(out)


def _integerize(points: Sequence[Point]) -> list:
    dens = [c.denominator for p in points for c in p]
    m = lcm(*dens) if dens else 1
    return [[int(c * m) for c in p] for p in points]


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


# -- affine dimension and facets ---------------------------------------------


def affine_dimension(points: Sequence) -> int:
    """Number of affinely independent points among ``points``, minus one."""
    pts = as_points(points)
    if not pts:
        raise ValueError("affine_dimension of an empty point set")
    base = pts[0]
    return _rank([tuple(a - b for a, b in zip(p, base)) for p in pts[1:]])


def _check_distinct(pts) -> None:
    seen = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise DuplicatePoint(seen[p], i)
        seen[p] = i


def _hyperplane_for_contact(q: list, contact: int, d: int):
    """Outward integer hyperplane through the points of ``contact``."""
    idx = list(_bits(contact))
    basis: list = []
    for v in idx[1:]:
        _insert(basis, [a - b for a, b in zip(q[v], q[idx[0]])])
        if len(basis) == d - 1:
            break
    normal = _normal([row for _, row in basis])
    off = _dot(normal, q[idx[0]])
    for x in q:
        s = _dot(normal, x) - off
        if s > 0:
            return [-c for c in normal], -off
        if s < 0:
            break
    return normal, off


def _supporting_facets_py(q: list, d: int) -> list:
    """Contact masks of all facets, by recursion over affinely independent d-subsets."""
    n = len(q)
    found: list = []

    def leaf(chosen: list, basis: list) -> None:
        cm = _mask(chosen)
        for fm in found:
            if cm & ~fm == 0:
                return
        normal = _normal([row for _, row in basis])
        off = _dot(normal, q[chosen[0]])
        sign = 0
        contact = 0
        for idx, x in enumerate(q):
            s = _dot(normal, x) - off
            if s == 0:
                contact |= 1 << idx
            elif s > 0:
                if sign < 0:
                    return
                sign = 1
            else:
                if sign > 0:
                    return
                sign = -1
        if contact not in found:
            found.append(contact)

    def rec(start: int, chosen: list, basis: list) -> None:
        if len(chosen) == d:
            leaf(chosen, basis)
            return
        need = d - len(chosen)
        for i in range(start, n - need + 1):
            if not chosen:
                rec(i + 1, [i], [])
                continue
            b = list(basis)
            if _insert(b, [a - c for a, c in zip(q[i], q[chosen[0]])]):
                rec(i + 1, chosen + [i], b)

    rec(0, [], [])
    return found


_INT64_SAFE = 2 ** 62
_CHUNK = 65536


def _np_normals(D):
    # generalized cross product by Laplace expansion, vectorized over axis 0
    d = D.shape[2]
    cache: dict = {}

    def det(row, cols):
        if not cols:  # d == 1: the empty minor
            return np.ones(D.shape[0], dtype=D.dtype)
        if len(cols) == 1:
            return D[:, row, cols[0]]
        key = (row, cols)
        if key not in cache:
            acc = None
            for j, c in enumerate(cols):
                term = D[:, row, c] * det(row + 1, cols[:j] + cols[j + 1:])
                acc = term if acc is None else (acc + term if j % 2 == 0 else acc - term)
            cache[key] = acc
        return cache[key]

    return np.stack([det(0, tuple(c for c in range(d) if c != i)) * (-1) ** i
                     for i in range(d)], axis=1)


def _int64_safe(q: list, d: int) -> bool:
    m = max((abs(c) for x in q for c in x), default=0)
    bound = factorial(d - 1) * (2 * m) ** (d - 1)
    return 4 * d * bound * max(m, 1) < _INT64_SAFE


def _supporting_facets_np(q: list, d: int) -> list:
    """Same brute force as the pure-Python path, vectorized in int64."""
    Q = np.array(q, dtype=np.int64)
    n = len(q)
    weights = [1 << i for i in range(n)]
    found: dict = {}
    combos = combinations(range(n), d)
    while True:
        chunk = np.array(list(islice(combos, _CHUNK)), dtype=np.intp)
        if chunk.size == 0:
            break
        base = Q[chunk[:, 0]]
        D = Q[chunk[:, 1:]] - base[:, None, :]
        N = _np_normals(D)
        keep = N.any(axis=1)
        N, base = N[keep], base[keep]
        S = N @ Q.T - np.einsum("ij,ij->i", N, base)[:, None]
        one_sided = ~((S > 0).any(axis=1) & (S < 0).any(axis=1))
        for row in np.unique(S[one_sided] == 0, axis=0):
            found.setdefault(sum(w for w, z in zip(weights, row) if z), None)
    return list(found)


def _supporting_facets(q: list, d: int) -> list:
    """Brute force over d-subsets of integer points ``q``.

    Returns ``(normal, offset, contact_mask)`` triples, with every point
    satisfying ``normal . x <= offset``.
    """
    if _int64_safe(q, d):
        contacts = _supporting_facets_np(q, d)
    else:
        contacts = _supporting_facets_py(q, d)
    out = []
    for c in sorted(contacts):
        normal, off = _hyperplane_for_contact(q, c, d)
        out.append((normal, off, c))
    return out


def _vertex_flags(facets: list, n: int, d: int) -> list:
    # a point is a vertex iff the normals of facets through it span R^d
    flags = []
    for i in range(n):
        normals = [f[0] for f in facets if f[2] >> i & 1]
        flags.append(len(normals) >= d and _rank(normals) == d)
    return flags


def extreme_point_indices(points: Sequence) -> list:
    """Indices of the input points that are vertices of their convex hull."""
    pts = as_points(points)
    _check_distinct(pts)
    d = len(pts[0])
    if affine_dimension(pts) != d:
        raise NotFullDimensional(f"points span dimension {affine_dimension(pts)} < {d}")
    facets = _supporting_facets(_integerize(pts), d)
    return [i for i, ok in enumerate(_vertex_flags(facets, len(pts), d)) if ok]


def facet_enumeration(points: Sequence) -> list:
    """All facets of the hull of ``points`` as ``(Hyperplane, vertex indices)``.

    Input must be full-dimensional and every point must be a vertex.
    """
    pts = as_points(points)
    if not pts:
        raise NotFullDimensional("no points")
    _check_distinct(pts)
    d = len(pts[0])
    dim = affine_dimension(pts)
    if dim != d:
        raise NotFullDimensional(f"points span dimension {dim} in ambient dimension {d}")
    q = _integerize(pts)
    scale = lcm(*(c.denominator for p in pts for c in p))
    facets = _supporting_facets(q, d)
    for i, ok in enumerate(_vertex_flags(facets, len(pts), d)):
        if not ok:
            raise NonVertexPoint(i)
    out = []
    for normal, off, contact in facets:
        h = Hyperplane(tuple(Fraction(x) for x in normal), Fraction(off, scale))
        out.append((h, tuple(_bits(contact))))
    out.sort(key=lambda t: t[1])
    return out


def facet_hyperplanes(lattice: "FaceLattice", points: Sequence) -> list:
    """Outward hyperplane of every lattice facet, checked against ``points``."""
    pts = as_points(points)
    d = lattice.polytope_dim
    if len(pts) != lattice.vertex_count or (pts and len(pts[0]) != d):
        raise NotRealized("point count or dimension does not match the lattice")
    q = _integerize(pts)
    dens = [c.denominator for p in pts for c in p]
    scale = lcm(*dens) if dens else 1
    out = []
    for facet in lattice.facets:
        basis: list = []
        base = q[facet[0]]
        for v in facet[1:]:
            _insert(basis, [a - b for a, b in zip(q[v], base)])
            if len(basis) == d - 1:
                break
        if len(basis) != d - 1:
            raise NotRealized(f"facet {facet} is not spanning a hyperplane")
        normal = _normal([row for _, row in basis])
        off = _dot(normal, base)
        fset = set(facet)
        sides = {(_dot(normal, q[i]) - off > 0) - (_dot(normal, q[i]) - off < 0)
                 for i in range(len(q)) if i not in fset}
        if any(_dot(normal, q[v]) != off for v in facet) or len(sides) != 1 or 0 in sides:
            raise NotRealized(f"facet {facet} is not realized by the coordinates")
        if sides == {1}:
            normal = [-x for x in normal]
            off = -off
        out.append(Hyperplane(tuple(Fraction(x) for x in normal), Fraction(off, scale)))
    return out


# -- face lattice ------------------------------------------------------------


@dataclass(frozen=True)
class FaceLattice:
    """All proper faces of a polytope, by dimension, as sorted vertex tuples."""

    ambient_dim: int
    polytope_dim: int
    vertex_count: int
    faces_by_dim: tuple

    @property
    def f_vector(self) -> tuple:
        return tuple(len(fs) for fs in self.faces_by_dim)

    @property
    def facets(self) -> tuple:
        return self.faces_by_dim[-1]

    @property
    def edges(self) -> tuple:
        return self.faces_by_dim[1] if self.polytope_dim > 1 else ()

    @cached_property
    def two_faces(self) -> tuple:
        """2-faces; for a polygon this is the polygon itself."""
        if self.polytope_dim == 2:
            return (tuple(range(self.vertex_count)),)
        if self.polytope_dim < 2:
            return ()
        return self.faces_by_dim[2]

    @cached_property
    def face_index(self) -> dict:
        """Map from vertex tuple to ``(dim, position)``."""
        out = {}
        for k, fs in enumerate(self.faces_by_dim):
            for i, f in enumerate(fs):
                out[f] = (k, i)
        return out

    @cached_property
    def masks_by_dim(self) -> tuple:
        return tuple(tuple(_mask(f) for f in fs) for fs in self.faces_by_dim)

    def faces_within(self, face: Sequence[int]) -> list:
        """Faces of every dimension contained in ``face`` (excluding ``face``)."""
        m = _mask(face)
        return [[f for f, fm in zip(fs, ms) if fm & ~m == 0 and fm != m]
                for fs, ms in zip(self.faces_by_dim, self.masks_by_dim)]

    @cached_property
    def graph(self):
        """The graph G(P): vertices and edges of the polytope."""
        from .complex import Graph

        return Graph(self.vertex_count, self.edges)


def _maximal(masks: set) -> list:
    ordered = sorted(masks, key=lambda m: -bin(m).count("1"))
    out: list = []
    for m in ordered:
        if not any(m & ~o == 0 for o in out):
            out.append(m)
    return out


def build_face_lattice(facets: Sequence[Sequence[int]], vertex_count: int,
                       points: Optional[Sequence] = None) -> FaceLattice:
    """Close the facet vertex sets under intersection and grade the result."""
    canon = sorted({tuple(sorted(set(f))) for f in facets})
    if not canon:
        raise NotALattice("no facets")
    for f in canon:
        if not f or f[0] < 0 or f[-1] >= vertex_count:
            raise NotALattice(f"facet {list(f)} has vertex indices out of range")
    covered = set().union(*map(set, canon))
    if covered != set(range(vertex_count)):
        missing = sorted(set(range(vertex_count)) - covered)
        raise NotALattice(f"vertices {missing} lie in no facet")

    ambient = None
    if points is not None:
        pts = as_points(points)
        if len(pts) != vertex_count:
            raise NotRealized(f"{len(pts)} points for {vertex_count} vertices")
        ambient = len(pts[0])
        expected = sorted(vs for _, vs in facet_enumeration(pts))
        if expected != canon:
            raise NotALattice("facets disagree with the hull of the coordinates")

    facet_masks = [_mask(f) for f in canon]
    levels = [list(facet_masks)]
    children: dict = {}
    current = facet_masks
    while True:
        nxt: set = set()
        for face in current:
            cands = {face & g for g in facet_masks if face & g and face & g != face}
            subs = _maximal(cands)
            if not subs and bin(face).count("1") > 1:
                raise NotALattice(f"face {list(_bits(face))} has no proper subfaces")
            children[face] = subs
            nxt.update(subs)
        if not nxt:
            break
        levels.append(sorted(nxt))
        current = nxt
    levels.reverse()
    d = len(levels)

    seen: dict = {}
    for k, lvl in enumerate(levels):
        for m in lvl:
            if m in seen:
                raise NotALattice(f"face {list(_bits(m))} appears in dimensions {seen[m]} and {k}")
            seen[m] = k
    if sorted(levels[0]) != [1 << i for i in range(vertex_count)]:
        raise NotALattice("0-faces are not exactly the singletons")
    for k in range(1, d):
        for m in levels[k]:
            subs = children[m]
            if any(seen[s] != k - 1 for s in subs):
                raise NotALattice(f"face {list(_bits(m))} is not graded")
            u = 0
            for s in subs:
                u |= s
            if u != m:
                raise NotALattice(f"face {list(_bits(m))} is not the union of its subfaces")
    if d > 1 and any(len(children[m]) != 2 for m in levels[1]):
        raise NotALattice("an edge does not have exactly two vertices")

    all_faces = list(seen)
    face_set = set(all_faces)
    for a, b in combinations(all_faces, 2):
        c = a & b
        if c and c not in face_set:
            raise NotALattice(f"faces {list(_bits(a))} and {list(_bits(b))} meet in a non-face")
    # faces of a facet, reached through subface links, are all faces inside it
    for fm in facet_masks:
        reach = set()
        stack = [fm]
        while stack:
            x = stack.pop()
            for s in children.get(x, ()):
                if s not in reach:
                    reach.add(s)
                    stack.append(s)
        inside = {m for m in all_faces if m & ~fm == 0 and m != fm}
        if reach != inside:
            raise NotALattice(f"facet {list(_bits(fm))} does not contain its faces as subfaces")
    euler = sum((-1) ** k * len(lvl) for k, lvl in enumerate(levels))
    if euler != 1 - (-1) ** d:
        raise NotALattice(f"Euler characteristic {euler} is wrong for dimension {d}")

    faces_by_dim = tuple(tuple(sorted(tuple(_bits(m)) for m in lvl)) for lvl in levels)
    if points is not None:
        if ambient != d:
            raise NotFullDimensional(f"lattice of dimension {d} in ambient dimension {ambient}")
        for k, fs in enumerate(faces_by_dim):
            for f in fs:
                if affine_dimension([pts[i] for i in f]) != k:
                    raise NotALattice(f"face {list(f)} has affine dimension != {k}")
    return FaceLattice(ambient if ambient is not None else d, d, vertex_count, faces_by_dim)


def facet_as_polytope(lattice: FaceLattice, points: Optional[Sequence], facet_index: int):
    """The facet as a polytope of its own, vertices re-indexed in sorted order.

    Coordinates are mapped affinely onto ``d - 1`` coordinates by dropping an
    axis transverse to the facet hyperplane, which is an exact affine
    isomorphism of the hyperplane onto ``Q^(d-1)``.
    """
    facet = lattice.facets[facet_index]
    local = {v: i for i, v in enumerate(facet)}
    d = lattice.polytope_dim
    sub = lattice.faces_within(facet)[: d - 1]
    faces_by_dim = tuple(tuple(sorted(tuple(local[v] for v in f) for f in fs)) for fs in sub)
    new_pts = None
    if points is not None:
        pts = as_points(points)
        h = facet_hyperplanes(lattice, pts)[facet_index]
        drop = next(i for i, a in enumerate(h.normal) if a != 0)
        new_pts = tuple(tuple(c for i, c in enumerate(pts[v]) if i != drop) for v in facet)
    return FaceLattice(d - 1, d - 1, len(facet), faces_by_dim), new_pts


@dataclass(frozen=True)
class Polytope:
    """A face lattice, optionally realized by rational vertex coordinates."""

    lattice: FaceLattice
    points: Optional[tuple] = None

    @classmethod
    def from_points(cls, points) -> "Polytope":
        pts = as_points(points)
        facets = [vs for _, vs in facet_enumeration(pts)]
        lattice = build_face_lattice(facets, len(pts))
        return cls(FaceLattice(len(pts[0]), lattice.polytope_dim, lattice.vertex_count,
                               lattice.faces_by_dim), pts)

    @classmethod
    def from_facets(cls, facets, vertex_count: Optional[int] = None) -> "Polytope":
        if vertex_count is None:
            vertex_count = 1 + max(v for f in facets for v in f)
        return cls(build_face_lattice(facets, vertex_count))

    @property
    def dim(self) -> int:
        return self.lattice.polytope_dim

    @property
    def graph(self):
        return self.lattice.graph

    def facet(self, index: int) -> "Polytope":
        lat, pts = facet_as_polytope(self.lattice, self.points, index)
        return Polytope(lat, pts)
