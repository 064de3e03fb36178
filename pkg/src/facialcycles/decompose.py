"""Constructive decomposition of even subgraphs into facial cycles.

The procedure follows an induction over a shelling ``F_1, ..., F_s``. A cycle
is placed in the smallest prefix graph ``G_n`` containing it. If it lies in
the facet graph ``G(F_n)`` it is handed to that facet, one dimension down.
Otherwise it crosses the intersection graph ``I_n = G_{n-1} & G(F_n)``, and
it is cut into

* ``C1 = L + M``, a cycle inside ``G_{n-1}``, and
* ``W = L' ^ M``, an even subgraph with fewer edges in ``G_{n-1} - G(F_n)``,

where ``L`` is the arc of the cycle outside the facet, ``L'`` the rest, and
``M`` a shortest path in ``I_n`` joining the ends of ``L``. The pair
``(n, edges of the cycle in G_{n-1} - G(F_n))`` falls lexicographically at
every cut, which bounds the work.

Every fact the argument depends on (induced facet graphs, connected ``I_n``,
at least two crossing vertices, simplicity of ``C1``, evenness of ``W``,
decrease of the measure) is checked while running and raises
``InternalAssertion`` if violated.
"""

from __future__ import annotations

import hashlib
import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .complex import Cycle, EdgeSet
from .cyclespace import (
    Decomposition,
    EvenSubgraph,
    facial_basis,
    is_bipartite,
    is_even,
    odd_vertices,
    oracle_decompose,
    reconstruct,
    split_into_cycles,
)
from .exceptions import DimensionTooLow, InternalAssertion, NoCoordinates, NotEven
from .geometry import FaceLattice, Polytope, _bits, _mask, facet_as_polytope
from .shelling import line_shelling

log = logging.getLogger(__name__)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _child_seed(seed: int, facet: tuple) -> int:
    h = hashlib.blake2b(f"{seed}:{','.join(map(str, facet))}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise InternalAssertion(what)


@dataclass(frozen=True)
class CrossingSurgery:
    x_vertices: tuple
    path_l: tuple  # x_j -> ... -> x_1, interior outside the facet
    path_l_prime: tuple  # x_1 -> ... -> x_j, the rest of the cycle
    path_m: tuple  # x_1 -> ... -> x_j inside the intersection graph
    cycle_c1: Cycle
    even_w: EvenSubgraph
    measure_before: int
    measure_after: int

    def summary(self) -> dict:
        return {
            "j": len(self.x_vertices),
            "len_L": len(self.path_l) - 1,
            "len_L_prime": len(self.path_l_prime) - 1,
            "len_M": len(self.path_m) - 1,
            "C1": len(self.cycle_c1),
            "W_edges": len(self.even_w),
            "measure_W": self.measure_after,
        }


class PrefixContext:
    """Shelling-derived data for one polytope, plus lazily built facet contexts.

    ``n`` is 1-based throughout, matching prefix length.
    """

    def __init__(self, lattice: FaceLattice, points, seed: int = 0, depth: int = 0):
        self.lattice = lattice
        self.points = points
        self.seed = seed
        self.depth = depth
        self.d = lattice.polytope_dim
        self.graph = lattice.graph
        self.two_face_index = {f: i for i, f in enumerate(lattice.two_faces)}
        self._children: dict = {}
        self.shelling = None
        if self.d < 2:
            raise DimensionTooLow(f"dimension {self.d} < 2")
        if self.d == 2:
            return
        if points is None:
            raise NoCoordinates("the proof method needs vertex coordinates for shellings")
        self.shelling = line_shelling(lattice, points, seed)
        self._build_prefixes()

    def _build_prefixes(self) -> None:
        g = self.graph
        lat = self.lattice
        order = self.shelling.order
        s = len(order)
        edge_masks = lat.masks_by_dim[1]
        fv, fe = [0], [0]
        for fi in order:
            vm = _mask(lat.facets[fi])
            em = 0
            induced = 0
            for i, m in enumerate(edge_masks):
                if m & ~vm == 0:
                    induced |= 1 << g.edge_index[lat.edges[i]]
            for e in lat.faces_within(lat.facets[fi])[1]:
                em |= 1 << g.edge_index[e]
            _check(em == induced, f"facet graph of {lat.facets[fi]} is not induced")
            fv.append(vm)
            fe.append(em)
        pv, pe = [0], [0]
        for n in range(1, s + 1):
            pv.append(pv[-1] | fv[n])
            pe.append(pe[-1] | fe[n])
        _check(pe[s - 1] == g.full_mask, "G_{s-1} misses an edge of the polytope")
        iv, ie = [0, 0], [0, 0]
        for n in range(2, s + 1):
            iv.append(pv[n - 1] & fv[n])
            ie.append(pe[n - 1] & fe[n])
            _check(self._connected(iv[n], ie[n]), f"intersection graph I_{n} is disconnected")
        self.fv, self.fe, self.pv, self.pe, self.iv, self.ie = fv, fe, pv, pe, iv, ie

    def _connected(self, vmask: int, emask: int) -> bool:
        verts = list(_bits(vmask))
        if not verts:
            return False
        return len(self._bfs_tree(verts[0], vmask, emask)) == len(verts)

    def _bfs_tree(self, root: int, vmask: int, emask: int) -> dict:
        g = self.graph
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in parent and vmask >> w & 1 and emask >> g.edge_id(u, w) & 1:
                    parent[w] = u
                    queue.append(w)
        return parent

    def shortest_path(self, a: int, b: int, n: int) -> Optional[tuple]:
        """BFS path in I_n, neighbours visited smallest index first."""
        parent = self._bfs_tree(a, self.iv[n], self.ie[n])
        if b not in parent:
            return None
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        return tuple(reversed(path))

    def measure(self, bits: int, n: int) -> int:
        """Edges of ``bits`` in G_{n-1} but not in G(F_n)."""
        return _popcount(bits & self.pe[n - 1] & ~self.fe[n])

    def minimal_prefix(self, bits: int) -> int:
        for n in range(1, len(self.pe)):
            if bits & ~self.pe[n] == 0:
                return n
        raise InternalAssertion("edge set is not inside the polytope graph")

    def child(self, n: int):
        """Context of facet F_n with maps from its 2-faces and edges back to ours."""
        if n not in self._children:
            fi = self.shelling.order[n - 1]
            facet = self.lattice.facets[fi]
            sub_lat, sub_pts = facet_as_polytope(self.lattice, self.points, fi)
            ctx = PrefixContext(sub_lat, sub_pts, _child_seed(self.seed, facet), self.depth + 1)
            face_map = []
            for f in sub_lat.two_faces:
                up = tuple(facet[v] for v in f)
                _check(up in self.two_face_index, f"2-face {up} of a facet is not a 2-face")
                face_map.append(self.two_face_index[up])
            edge_map = {}
            for i, (u, v) in enumerate(ctx.graph.edges):
                edge_map[self.graph.edge_id(facet[u], facet[v])] = i
            self._children[n] = (ctx, face_map, edge_map)
        return self._children[n]

    # -- the recursion ------------------------------------------------------

    def decompose_bits(self, bits: int, trace: Optional[list]) -> int:
        """Facial coefficients (bit mask over ``lattice.two_faces``) of an even edge set."""
        if not bits:
            return 0
        if self.d == 2:
            _check(bits == self.graph.full_mask, "even subgraph of a polygon is not its boundary")
            if trace is not None:
                trace.append({"depth": self.depth, "d": 2, "kind": "polygon",
                              "edges": _popcount(bits)})
            return 1
        result = 0
        work = split_into_cycles(EdgeSet(bits, self.graph))
        work.reverse()
        while work:
            c = work.pop()
            cb = c.edge_set.bits
            n = self.minimal_prefix(cb)
            if cb & ~self.fe[n] == 0:
                if trace is not None:
                    trace.append({"depth": self.depth, "d": self.d, "kind": "facet", "n": n,
                                  "cycle": len(c)})
                result ^= self._in_facet(n, cb, trace)
                continue
            surgery = self.crossing_surgery(c, n)
            if trace is not None:
                trace.append({"depth": self.depth, "d": self.d, "kind": "crossing", "n": n,
                              "cycle": len(c), "measure": surgery.measure_before,
                              **surgery.summary()})
            pieces = split_into_cycles(surgery.even_w)
            # C1 first, then the pieces of W
            work.extend(reversed(pieces))
            work.append(surgery.cycle_c1)
        return result

    def _in_facet(self, n: int, bits: int, trace) -> int:
        ctx, face_map, edge_map = self.child(n)
        local = 0
        for e in _bits(bits):
            local |= 1 << edge_map[e]
        sub = ctx.decompose_bits(local, trace)
        out = 0
        for i in _bits(sub):
            out ^= 1 << face_map[i]
        return out

    def crossing_surgery(self, c: Cycle, n: int) -> CrossingSurgery:
        cb = c.edge_set.bits
        if not (n >= 2 and cb & ~self.pe[n] == 0 and cb & ~self.pe[n - 1]
                and cb & ~self.fe[n]):
            raise ValueError("cycle must lie in G_n but in neither G_{n-1} nor G(F_n)")
        fv, iv = self.fv[n], self.iv[n]
        seq = list(c.vertices)
        k = len(seq)
        outside = [v for v in seq if not fv >> v & 1]
        _check(bool(outside), "crossing cycle has no vertex outside the facet")
        i0 = seq.index(min(outside))
        nxt, prv = seq[(i0 + 1) % k], seq[(i0 - 1) % k]
        step = 1 if nxt < prv else -1
        walk = [seq[(i0 + step * t) % k] for t in range(k)]
        hits = [t for t, v in enumerate(walk) if iv >> v & 1]
        _check(len(hits) >= 2, f"cycle meets I_{n} in {len(hits)} vertex")
        p1, pj = hits[0], hits[-1]
        path_l = tuple(walk[pj:] + walk[: p1 + 1])
        path_lp = tuple(walk[p1: pj + 1])
        _check(all(not fv >> v & 1 for v in path_l[1:-1]),
               "interior of L touches the facet")
        path_m = self.shortest_path(walk[p1], walk[pj], n)
        _check(path_m is not None, f"no x_1-x_j path in I_{n}")
        c1_seq = list(path_l) + list(path_m[1:-1])
        _check(len(set(c1_seq)) == len(c1_seq), "C1 is not a simple cycle")
        c1 = Cycle.from_vertices(self.graph, c1_seq)
        _check(c1.edge_set.bits & ~self.pe[n - 1] == 0, "C1 leaves G_{n-1}")
        g = self.graph
        lp_bits = 0
        for a, b in zip(path_lp, path_lp[1:]):
            lp_bits |= 1 << g.edge_id(a, b)
        m_bits = 0
        for a, b in zip(path_m, path_m[1:]):
            m_bits |= 1 << g.edge_id(a, b)
        w_bits = lp_bits ^ m_bits
        w = EdgeSet(w_bits, g)
        _check(is_even(w), "W is not even")
        _check(c1.edge_set.bits ^ w_bits == cb, "C is not C1 ^ W")
        before, after = self.measure(cb, n), self.measure(w_bits, n)
        _check(after < before, f"measure did not drop ({before} -> {after})")
        return CrossingSurgery(tuple(walk[t] for t in hits), path_l, path_lp, path_m, c1,
                               EvenSubgraph(w_bits, g), before, after)


def _unpack(polytope):
    if isinstance(polytope, Polytope):
        return polytope.lattice, polytope.points
    lattice, points = polytope
    return lattice, points


def _validate_target(target: EdgeSet, lattice: FaceLattice) -> None:
    if lattice.polytope_dim < 2:
        raise DimensionTooLow(f"dimension {lattice.polytope_dim} < 2")
    if target.graph is not lattice.graph and target.graph != lattice.graph:
        raise ValueError("target is not an edge set of the polytope graph")
    bad = odd_vertices(target)
    if bad:
        raise NotEven(bad)


def decompose_with_trace(target: EdgeSet, polytope, seed: int = 0,
                         context: Optional[PrefixContext] = None):
    """Like ``decompose``, also returning one trace record per recursion node."""
    lattice, points = _unpack(polytope)
    _validate_target(target, lattice)
    trace: list = []
    if not target.bits:
        return Decomposition((), target), trace
    if context is None:
        context = PrefixContext(lattice, points, seed)
    coeffs = context.decompose_bits(target.bits, trace)
    ids = tuple(_bits(coeffs))
    basis = facial_basis(lattice)
    _check(reconstruct(basis, ids).bits == target.bits, "reconstruction differs from target")
    log.debug("decomposed %d edges into %d facial cycles over %d nodes",
              len(target), len(ids), len(trace))
    return Decomposition(ids, target), trace


def decompose(target: EdgeSet, polytope, seed: int = 0,
              context: Optional[PrefixContext] = None) -> Decomposition:
    """2-faces whose facial cycles have symmetric difference ``target``.

    ``polytope`` is a ``Polytope`` or a ``(lattice, points)`` pair. Passing a
    prebuilt ``context`` (same lattice and seed) reuses its shellings.
    """
    return decompose_with_trace(target, polytope, seed, context)[0]


def odd_facial_witness(polytope, seed: int = 0, method: str = "proof"):
    """An odd facial cycle, found by decomposing an odd cycle of the graph.

    Returns ``None`` when the graph is bipartite.
    """
    lattice, points = _unpack(polytope)
    res = is_bipartite(lattice.graph)
    if res.bipartite:
        return None
    basis = facial_basis(lattice)
    target = res.odd_cycle.edge_set
    if method == "proof":
        dec = decompose(target, (lattice, points), seed)
    else:
        dec = oracle_decompose(basis, target)
    for i in dec.two_face_ids:
        if len(basis.rows[i]) % 2:
            return i
    raise InternalAssertion("odd cycle decomposed into even facial cycles only")
