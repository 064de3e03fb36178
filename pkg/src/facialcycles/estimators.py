"""scikit-learn style wrapper around the facial-cycle decomposition."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .cyclespace import facial_basis, oracle_decompose
from .decompose import PrefixContext, decompose
from .exceptions import InternalAssertion
from .validation import check_edge_matrix, check_even_rows, check_polytope

METHODS = ("proof", "oracle")


class FacialCycleDecomposer(TransformerMixin, BaseEstimator):
    """Map even subgraphs of a polytope graph to facial-cycle coefficients.

    Rows of ``X`` are 0/1 indicators over the edges of ``G(P)`` in canonical
    order (``polytope.graph.edges``). ``transform`` returns 0/1 rows over the
    2-faces (``polytope.lattice.two_faces``) whose facial cycles XOR back to
    the input row; ``inverse_transform`` performs that XOR.

    Parameters
    ----------
    polytope : Polytope, (FaceLattice, points) or array of vertex coordinates
    method : {"proof", "oracle"}
        ``"proof"`` runs the shelling-based construction and needs
        coordinates; ``"oracle"`` solves over GF(2) by elimination.
    seed : int
        Seed for the line shellings.
    """

    def __init__(self, polytope=None, method="proof", seed=0):
        self.polytope = polytope
        self.method = method
        self.seed = seed

    def fit(self, X=None, y=None):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        poly = check_polytope(self.polytope)
        self.polytope_ = poly
        self.graph_ = poly.graph
        self.basis_ = facial_basis(poly.lattice)
        self.context_ = (PrefixContext(poly.lattice, poly.points, self.seed)
                         if self.method == "proof" else None)
        self.n_features_in_ = len(self.graph_.edges)
        self.n_components_ = len(poly.lattice.two_faces)
        if X is not None:
            check_edge_matrix(X, self.n_features_in_)
        return self

    def _coefficients(self, e):
        if self.method == "proof":
            return decompose(e, self.polytope_, self.seed, context=self.context_).two_face_ids
        dec = oracle_decompose(self.basis_, e)
        if dec is None:
            raise InternalAssertion("even subgraph outside the facial span")
        return dec.two_face_ids

    def transform(self, X):
        check_is_fitted(self, "basis_")
        X = check_edge_matrix(X, self.n_features_in_)
        out = np.zeros((X.shape[0], self.n_components_), dtype=np.uint8)
        for r, e in enumerate(check_even_rows(X, self.graph_)):
            out[r, list(self._coefficients(e))] = 1
        return out

    def inverse_transform(self, Z):
        check_is_fitted(self, "basis_")
        Z = check_edge_matrix(Z, self.n_components_)
        rows = np.array([r.to_array() for r in self.basis_.rows], dtype=np.uint8)
        return (Z.astype(np.int64) @ rows.astype(np.int64) % 2).astype(np.uint8)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "basis_")
        return np.array([f"face{i}" for i in range(self.n_components_)], dtype=object)
