import random

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import FunctionTransformer

from facialcycles import FacialCycleDecomposer
from facialcycles.corpus import cube
from facialcycles.cyclespace import random_even_subgraph
from facialcycles.exceptions import NoCoordinates, NotEven
from facialcycles.geometry import build_face_lattice


def targets(graph, n, seed=0):
    rng = random.Random(seed)
    return np.array([random_even_subgraph(graph, rng).to_array() for _ in range(n)],
                    dtype=np.uint8)


def test_params_roundtrip(cube3):
    est = FacialCycleDecomposer(polytope=cube3, method="oracle", seed=4)
    params = est.get_params()
    assert params == {"polytope": cube3, "method": "oracle", "seed": 4}
    est.set_params(seed=9)
    assert est.seed == 9
    c = clone(est)
    assert c.get_params()["seed"] == 9 and not hasattr(c, "basis_")


@pytest.mark.parametrize("method", ["proof", "oracle"])
def test_fit_transform_inverse(cube4, method):
    X = targets(cube4.graph, 15)
    est = FacialCycleDecomposer(cube4, method=method).fit(X)
    assert est.n_features_in_ == 32 and est.n_components_ == 24
    Z = est.transform(X)
    assert Z.shape == (15, 24) and Z.dtype == np.uint8
    assert np.array_equal(est.inverse_transform(Z), X)
    assert len(est.get_feature_names_out()) == 24


def test_accepts_point_array():
    est = FacialCycleDecomposer(np.array(cube(3), dtype=object)).fit()
    assert est.n_features_in_ == 12


def test_oracle_on_lattice_only(cube3):
    lat = build_face_lattice(cube3.lattice.facets, 8)
    est = FacialCycleDecomposer(lat, method="oracle").fit()
    X = targets(est.graph_, 5)
    assert np.array_equal(est.inverse_transform(est.transform(X)), X)
    with pytest.raises(NoCoordinates):
        FacialCycleDecomposer(lat, method="proof").fit()


def test_pipeline(cube3):
    X = targets(cube3.graph, 6, seed=3)
    pipe = Pipeline([
        ("decompose", FacialCycleDecomposer(cube3)),
        ("count", FunctionTransformer(lambda z: z.sum(axis=1, keepdims=True))),
    ])
    out = pipe.fit_transform(X)
    assert out.shape == (6, 1)


def test_errors(cube3):
    with pytest.raises(NotFittedError):
        FacialCycleDecomposer(cube3).transform(np.zeros((1, 12)))
    est = FacialCycleDecomposer(cube3).fit()
    with pytest.raises(ValueError):
        est.transform(np.zeros((1, 11)))
    with pytest.raises(ValueError):
        est.transform(np.full((1, 12), 2))
    odd = np.zeros((1, 12), dtype=np.uint8)
    odd[0, 0] = 1
    with pytest.raises(NotEven):
        est.transform(odd)
    with pytest.raises(ValueError):
        FacialCycleDecomposer(cube3, method="magic").fit()
    with pytest.raises(ValueError):
        FacialCycleDecomposer().fit()


def test_empty_batch(cube3):
    est = FacialCycleDecomposer(cube3).fit()
    assert est.transform(np.zeros((0, 12), dtype=np.uint8)).shape == (0, 6)
