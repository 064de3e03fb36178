"""Cycle space over GF(2): evenness, facial generators, and a linear-algebra solver."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .complex import Cycle, EdgeSet, Graph, facial_cycle, xor
from .exceptions import AmbientMismatch, NotEven
from .geometry import FaceLattice, _bits

__all__ = [
    "BipartiteResult", "Decomposition", "EvenSubgraph", "FacialBasis", "GF2Eliminator",
    "bipartite_via_2faces", "cycle_space_dimension", "facial_basis", "fundamental_cycles",
    "is_bipartite", "is_even", "odd_vertices", "oracle_decompose", "random_even_subgraph",
    "reconstruct", "split_into_cycles", "xor",
]


def odd_vertices(e: EdgeSet) -> list:
    return [v for v, k in enumerate(e.degrees()) if k % 2]


def is_even(e: EdgeSet) -> bool:
    return not odd_vertices(e)


@dataclass(frozen=True, eq=False)
class EvenSubgraph(EdgeSet):
    def __post_init__(self):
        bad = odd_vertices(self)
        if bad:
            raise NotEven(bad)

    @classmethod
    def of(cls, e: EdgeSet) -> "EvenSubgraph":
        return e if isinstance(e, cls) else cls(e.bits, e.graph)


def split_into_cycles(e: EdgeSet) -> list:
    """Edge-disjoint cycles whose union is ``e``.

    Repeatedly walks from the smallest vertex still carrying edges, always
    stepping to the smallest unused neighbour, and cuts off the cycle closed
    at the first repeated vertex.
    """
    if not is_even(e):
        raise NotEven(odd_vertices(e))
    g = e.graph
    bits = e.bits
    out = []
    while bits:
        low = (bits & -bits).bit_length() - 1
        start = g.edges[low][0]
        for v in range(start):
            if g.incidence[v] & bits:
                start = v
                break
        path = [start]
        pos = {start: 0}
        used = 0
        cur = start
        while True:
            nxt = None
            for w in g.adjacency[cur]:
                eid = g.edge_id(cur, w)
                if bits >> eid & 1 and not used >> eid & 1:
                    nxt, nid = w, eid
                    break
            used |= 1 << nid
            if nxt in pos:
                loop = path[pos[nxt]:]
                c = Cycle.from_vertices(g, loop)
                out.append(c)
                bits &= ~c.edge_set.bits
                break
            pos[nxt] = len(path)
            path.append(nxt)
            cur = nxt
    return out


def cycle_space_dimension(g: Graph) -> int:
    return len(g.edges) - g.vertex_count + len(g.components())


class GF2Eliminator:
    """Incremental row echelon form over GF(2) with bit-packed rows.

    Pivot of a row is its lowest set bit (first nonzero column); rows are
    taken in input order, so the lowest-index row wins each pivot column.
    Each stored row remembers which input rows it combines.
    """

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, row: int, combo: int = 0):
        pivots = self.pivots
        while row:
            col = (row & -row).bit_length() - 1
            hit = pivots.get(col)
            if hit is None:
                return row, combo
            row ^= hit[0]
            combo ^= hit[1]
        return 0, combo

    def add(self, row: int, index: int) -> bool:
        row, combo = self.reduce(row, 1 << index)
        if not row:
            return False
        self.pivots[(row & -row).bit_length() - 1] = (row, combo)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, target: int) -> Optional[int]:
        rest, combo = self.reduce(target)
        return None if rest else combo


@dataclass(frozen=True, eq=False)
class FacialBasis:
    two_face_ids: tuple
    rows: tuple
    graph: Graph = field(repr=False)

    @cached_property
    def eliminator(self) -> GF2Eliminator:
        el = GF2Eliminator()
        for i, r in enumerate(self.rows):
            el.add(r.bits, i)
        return el

    @property
    def rank(self) -> int:
        return self.eliminator.rank


def facial_basis(lattice: FaceLattice) -> FacialBasis:
    """One facial cycle per 2-face, in canonical 2-face order."""
    faces = lattice.two_faces
    if not faces:
        raise ValueError("lattice has no 2-faces")
    rows = tuple(facial_cycle(lattice, f).edge_set for f in faces)
    return FacialBasis(tuple(range(len(faces))), rows, lattice.graph)


@dataclass(frozen=True)
class Decomposition:
    """2-faces (by position in ``lattice.two_faces``) whose facial cycles XOR to ``target``."""

    two_face_ids: tuple
    target: EdgeSet = field(repr=False)


def reconstruct(basis: FacialBasis, ids) -> EdgeSet:
    bits = 0
    for i in ids:
        bits ^= basis.rows[i].bits
    return EdgeSet(bits, basis.graph)


def oracle_decompose(basis: FacialBasis, target: EdgeSet) -> Optional[Decomposition]:
    """Solve for facial coefficients by Gaussian elimination; ``None`` if unsolvable."""
    if target.graph is not basis.graph and target.graph != basis.graph:
        raise AmbientMismatch("target is not on the facial basis graph")
    combo = basis.eliminator.solve(target.bits)
    if combo is None:
        return None
    ids = tuple(basis.two_face_ids[i] for i in _bits(combo))
    return Decomposition(ids, target)


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    coloring: Optional[tuple] = None
    odd_cycle: Optional[Cycle] = None

    def __bool__(self):
        return self.bipartite


def is_bipartite(g: Graph) -> BipartiteResult:
    """BFS 2-colouring; on failure an odd cycle is returned as witness."""
    color = [-1] * g.vertex_count
    parent = [-1] * g.vertex_count
    depth = [0] * g.vertex_count
    for s in range(g.vertex_count):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    a, b = [u], [w]
                    while a[-1] != b[-1]:
                        if depth[a[-1]] >= depth[b[-1]]:
                            a.append(parent[a[-1]])
                        else:
                            b.append(parent[b[-1]])
                    seq = a + b[-2::-1]
                    return BipartiteResult(False, odd_cycle=Cycle.from_vertices(g, seq))
    return BipartiteResult(True, coloring=tuple(color))


def bipartite_via_2faces(lattice: FaceLattice) -> bool:
    return all(len(facial_cycle(lattice, f)) % 2 == 0 for f in lattice.two_faces)


def fundamental_cycles(g: Graph) -> list:
    """One cycle per chord of a BFS spanning forest (smallest index first)."""
    parent = [-1] * g.vertex_count
    depth = [0] * g.vertex_count
    seen = [False] * g.vertex_count
    tree = 0
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    tree |= 1 << g.edge_id(u, w)
                    queue.append(w)
    out = []
    for i, (u, v) in enumerate(g.edges):
        if tree >> i & 1:
            continue
        a, b = [u], [v]
        while a[-1] != b[-1]:
            if depth[a[-1]] >= depth[b[-1]]:
                a.append(parent[a[-1]])
            else:
                b.append(parent[b[-1]])
        out.append(Cycle.from_vertices(g, a + b[-2::-1]))
    return out


def random_even_subgraph(g: Graph, rng: random.Random, k: Optional[int] = None) -> EvenSubgraph:
    """Random element of Z(G) built from fundamental cycles.

    With ``k`` given, XOR of ``k`` distinct fundamental cycles; otherwise each
    fundamental cycle is included independently with probability 1/2.
    """
    basis = fundamental_cycles(g)
    if k is None:
        chosen = [c for c in basis if rng.random() < 0.5]
    else:
        chosen = rng.sample(basis, min(k, len(basis)))
    bits = 0
    for c in chosen:
        bits ^= c.edge_set.bits
    return EvenSubgraph(bits, g)
