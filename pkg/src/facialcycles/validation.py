"""Input checking shared by the estimator and the CLI."""

from __future__ import annotations

import numpy as np
from sklearn.utils import check_array

from .complex import EdgeSet, Graph
from .exceptions import NotEven
from .geometry import FaceLattice, Polytope


def check_polytope(obj) -> Polytope:
    """Coerce a Polytope, a (lattice, points) pair, a FaceLattice or a point array."""
    if isinstance(obj, Polytope):
        return obj
    if isinstance(obj, FaceLattice):
        return Polytope(obj)
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], FaceLattice):
        return Polytope(obj[0], None if obj[1] is None else tuple(map(tuple, obj[1])))
    if obj is None:
        raise ValueError("a polytope is required")
    return Polytope.from_points(obj)


def check_edge_matrix(X, n_edges: int) -> np.ndarray:
    """Validate a 0/1 matrix with one column per edge; returns uint8."""
    X = check_array(X, dtype=None, ensure_2d=True, ensure_min_samples=0)
    if X.shape[1] != n_edges:
        raise ValueError(f"X has {X.shape[1]} columns, the graph has {n_edges} edges")
    if X.size and not np.isin(X, (0, 1)).all():
        raise ValueError("X must be a 0/1 edge-indicator matrix")
    return X.astype(np.uint8)


def row_to_edge_set(row, graph: Graph) -> EdgeSet:
    bits = 0
    for i in np.flatnonzero(row):
        bits |= 1 << int(i)
    return EdgeSet(bits, graph)


def check_even_rows(X: np.ndarray, graph: Graph) -> list:
    """Edge sets for each row, raising NotEven on the first odd row."""
    out = []
    for row in X:
        e = row_to_edge_set(row, graph)
        deg = e.degrees()
        odd = [v for v, k in enumerate(deg) if k % 2]
        if odd:
            raise NotEven(odd)
        out.append(e)
    return out
