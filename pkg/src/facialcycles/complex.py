"""Polytopal complexes, their graphs, and edge sets over GF(2).

An ``EdgeSet`` is a Python int used as a bit vector over the edge indexing of
one ``Graph``. Graphs of sub-complexes keep ``vertex_labels`` mapping their
local vertex indices back into the polytope's vertex universe.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .exceptions import AmbientMismatch, Malformed2Face, NoEdges, NotPure
from .geometry import FaceLattice, _bits, _mask


class Graph:
    """Simple undirected graph with a fixed canonical edge indexing."""

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]],
                 vertex_labels: Optional[Sequence[int]] = None):
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise ValueError(f"multi-edge {e}")
            canon.add(e)
        self.vertex_count = vertex_count
        self.edges = tuple(sorted(canon))
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        adj: list = [[] for _ in range(vertex_count)]
        inc = [0] * vertex_count
        for i, (u, v) in enumerate(self.edges):
            adj[u].append(v)
            adj[v].append(u)
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        self.incidence = tuple(inc)
        if vertex_labels is None:
            vertex_labels = range(vertex_count)
        self.vertex_labels = tuple(vertex_labels)
        if len(self.vertex_labels) != vertex_count:
            raise ValueError("one label per vertex required")
        self._label_index = {lab: i for i, lab in enumerate(self.vertex_labels)}

    def __repr__(self):
        return f"Graph(vertices={self.vertex_count}, edges={len(self.edges)})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertex_count == other.vertex_count and self.edges == other.edges
                and self.vertex_labels == other.vertex_labels)

    def __hash__(self):
        return hash((self.vertex_count, self.edges, self.vertex_labels))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def index_of(self, label: int) -> int:
        return self._label_index[label]

    def has_label(self, label: int) -> bool:
        return label in self._label_index

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(u, v) if u < v else (v, u)]

    def edge_set(self, pairs: Iterable[Sequence[int]] = ()) -> "EdgeSet":
        bits = 0
        for u, v in pairs:
            bits ^= 1 << self.edge_id(u, v)
        return EdgeSet(bits, self)

    def empty(self) -> "EdgeSet":
        return EdgeSet(0, self)

    def components(self) -> list:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.vertex_count
        out = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.vertex_count > 0 and len(self.components()) == 1


@dataclass(frozen=True)
class EdgeSet:
    """Spanning subgraph of ``graph`` given by a bit vector over its edges."""

    bits: int
    graph: Graph = field(repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, EdgeSet):
            return NotImplemented
        return self.bits == other.bits and self.graph == other.graph

    def __hash__(self):
        return hash(self.bits)

    def __xor__(self, other: "EdgeSet") -> "EdgeSet":
        return xor(self, other)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self):
        edges = self.graph.edges
        return (edges[i] for i in _bits(self.bits))

    def degrees(self) -> list:
        deg = [0] * self.graph.vertex_count
        for u, v in self:
            deg[u] += 1
            deg[v] += 1
        return deg

    def vertices(self) -> list:
        return [v for v, k in enumerate(self.degrees()) if k]

    def to_array(self):
        import numpy as np

        out = np.zeros(len(self.graph.edges), dtype=np.uint8)
        for i in _bits(self.bits):
            out[i] = 1
        return out


def xor(a: EdgeSet, b: EdgeSet) -> EdgeSet:
    """Symmetric difference of two spanning subgraphs."""
    if a.graph is not b.graph and a.graph != b.graph:
        raise AmbientMismatch("edge sets live on different graphs")
    return EdgeSet(a.bits ^ b.bits, a.graph)


def _canonical_cycle(seq: Sequence[int]) -> tuple:
    # start at the smallest vertex, head toward its smaller neighbour
    k = len(seq)
    i = min(range(k), key=lambda j: seq[j])
    fwd, back = seq[(i + 1) % k], seq[(i - 1) % k]
    if fwd < back:
        return tuple(seq[(i + j) % k] for j in range(k))
    return tuple(seq[(i - j) % k] for j in range(k))


@dataclass(frozen=True)
class Cycle:
    vertices: tuple
    edge_set: EdgeSet

    @classmethod
    def from_vertices(cls, graph: Graph, seq: Sequence[int]) -> "Cycle":
        seq = list(seq)
        if len(seq) < 3 or len(set(seq)) != len(seq):
            raise ValueError(f"not a simple cycle: {seq}")
        bits = 0
        for a, b in zip(seq, seq[1:] + seq[:1]):
            try:
                bits |= 1 << graph.edge_id(a, b)
            except KeyError:
                raise ValueError(f"{a} and {b} are not adjacent") from None
        return cls(_canonical_cycle(seq), EdgeSet(bits, graph))

    def __len__(self) -> int:
        return len(self.vertices)


# -- complexes ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PolytopalComplex:
    """Faces keyed by sorted vertex tuple, each mapped to its dimension."""

    dim: int
    faces: dict
    vertex_universe: int

    @classmethod
    def from_faces(cls, faces: dict, vertex_universe: int) -> "PolytopalComplex":
        faces = {tuple(sorted(f)): k for f, k in faces.items()}
        return cls(max(faces.values(), default=-1), faces, vertex_universe)

    def __eq__(self, other):
        if not isinstance(other, PolytopalComplex):
            return NotImplemented
        return self.faces == other.faces and self.vertex_universe == other.vertex_universe

    def __contains__(self, face) -> bool:
        return tuple(face) in self.faces

    def __or__(self, other: "PolytopalComplex") -> "PolytopalComplex":
        return PolytopalComplex.from_faces({**self.faces, **other.faces},
                                           max(self.vertex_universe, other.vertex_universe))

    def faces_of_dim(self, k: int) -> list:
        return sorted(f for f, d in self.faces.items() if d == k)

    @cached_property
    def facets(self) -> list:
        return self.faces_of_dim(self.dim)

    def is_pure(self) -> bool:
        tops = [_mask(f) for f in self.facets]
        return all(any(_mask(f) & ~t == 0 for t in tops) for f in self.faces)


def face_complex(lattice: FaceLattice, face: Sequence[int]) -> PolytopalComplex:
    """C(F): a face together with all of its faces."""
    face = tuple(face)
    k = lattice.face_index[face][0] if face in lattice.face_index else None
    if k is None:
        if len(face) == lattice.vertex_count:
            k = lattice.polytope_dim
        else:
            raise KeyError(f"{list(face)} is not a face")
    faces = {face: k}
    for j, fs in enumerate(lattice.faces_within(face)):
        for f in fs:
            faces[f] = j
    return PolytopalComplex(k, faces, lattice.vertex_count)


def boundary_complex(lattice: FaceLattice) -> PolytopalComplex:
    faces = {f: k for k, fs in enumerate(lattice.faces_by_dim) for f in fs}
    return PolytopalComplex(lattice.polytope_dim - 1, faces, lattice.vertex_count)


def prefix_complex(lattice: FaceLattice, shelling_order: Sequence[int], n: int) -> PolytopalComplex:
    """C(F_1 u ... u F_n) for the first ``n`` facets of an ordering."""
    if not 1 <= n <= len(shelling_order):
        raise ValueError(f"prefix length {n} outside 1..{len(shelling_order)}")
    masks = [_mask(lattice.facets[i]) for i in shelling_order[:n]]
    faces = {}
    for k, (fs, ms) in enumerate(zip(lattice.faces_by_dim, lattice.masks_by_dim)):
        for f, m in zip(fs, ms):
            if any(m & ~t == 0 for t in masks):
                faces[f] = k
    cx = PolytopalComplex(lattice.polytope_dim - 1, faces, lattice.vertex_count)
    assert cx.is_pure()
    return cx


def graph_of(cx) -> Graph:
    """Graph of a complex (or of a lattice), labels recording original vertices."""
    if isinstance(cx, FaceLattice):
        return cx.graph
    edges = cx.faces_of_dim(1)
    if not edges:
        raise NoEdges("complex has no 1-faces")
    labels = sorted(f[0] for f in cx.faces_of_dim(0))
    local = {v: i for i, v in enumerate(labels)}
    return Graph(len(labels), [(local[u], local[v]) for u, v in edges], labels)


def intersect_graphs(a: Graph, b: Graph) -> Graph:
    """Common vertices and common edges, compared through vertex labels."""
    labels = sorted(set(a.vertex_labels) & set(b.vertex_labels))
    local = {lab: i for i, lab in enumerate(labels)}
    edges_a = {(a.vertex_labels[u], a.vertex_labels[v]) for u, v in a.edges}
    edges_a = {(min(e), max(e)) for e in edges_a}
    common = []
    for u, v in b.edges:
        lu, lv = b.vertex_labels[u], b.vertex_labels[v]
        if (min(lu, lv), max(lu, lv)) in edges_a:
            common.append((local[lu], local[lv]))
    return Graph(len(labels), common, labels)


def facial_cycle(obj, two_face, graph: Optional[Graph] = None) -> Cycle:
    """Boundary cycle of a 2-face, in canonical orientation.

    ``obj`` is a ``FaceLattice`` (2-faces may be given by position) or a
    ``PolytopalComplex``. The cycle lives on ``graph``, by default the graph of
    ``obj``; vertex numbers in the result are indices of that graph.
    """
    if isinstance(obj, FaceLattice):
        if isinstance(two_face, int):
            two_face = obj.two_faces[two_face]
        face = tuple(two_face)
        fm = _mask(face)
        edges = [e for e, m in zip(obj.edges, obj.masks_by_dim[1]) if m & ~fm == 0]
    else:
        face = tuple(two_face)
        if obj.faces.get(face) != 2:
            raise Malformed2Face(f"{list(face)} is not a 2-face of the complex")
        fm = _mask(face)
        edges = [e for e in obj.faces_of_dim(1) if _mask(e) & ~fm == 0]
    if graph is None:
        graph = graph_of(obj)
    nbrs: dict = {v: [] for v in face}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    if len(face) < 3 or any(len(n) != 2 for n in nbrs.values()):
        raise Malformed2Face(f"edges of {list(face)} are not 2-regular")
    start = face[0]
    seq = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        seq.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(seq) != len(face):
        raise Malformed2Face(f"edges of {list(face)} form more than one cycle")
    local = [graph.index_of(v) for v in seq]
    return Cycle.from_vertices(graph, local)


def ridge_adjacency_graph(cx: PolytopalComplex) -> Graph:
    """One node per top face (in ``cx.facets`` order); adjacent iff they share a ridge."""
    if cx.dim < 1 or not cx.is_pure():
        raise NotPure("ridge adjacency needs a pure complex of dimension >= 1")
    tops = cx.facets
    masks = [_mask(f) for f in tops]
    ridges = {_mask(f) for f in cx.faces_of_dim(cx.dim - 1)}
    edges = []
    for i in range(len(tops)):
        for j in range(i + 1, len(tops)):
            if masks[i] & masks[j] in ridges:
                edges.append((i, j))
    return Graph(len(tops), edges)


def is_strongly_connected(cx: PolytopalComplex) -> bool:
    return ridge_adjacency_graph(cx).is_connected()


def graph_connectivity_check(cx: PolytopalComplex) -> bool:
    if cx.dim < 1 or not cx.is_pure():
        raise NotPure("connectivity check needs a pure complex of dimension >= 1")
    return graph_of(cx).is_connected()
