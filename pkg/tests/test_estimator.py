from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import GOLDEN2_F, GOLDEN3_F1, GOLDEN3_F2, P
from mptd.estimator import TriangularDecomposer, check_points, check_system
from mptd.polyring import PolyError


def test_check_system():
    order, f1, f2 = check_system(["x", P("y")])
    assert order.names == ("x", "y") and f1 == P("x") and f2 == P("y")
    for bad in ("x", ["x"], ["x", "0"], ["x", 3]):
        with pytest.raises((ValueError, TypeError)):
            check_system(bad)


def test_check_points():
    pts = check_points(np.array([[0.5, 1], [2, 3]]), 2)
    assert pts == [(Fraction(1, 2), Fraction(1)), (Fraction(2), Fraction(3))]
    assert check_points([["1/3", 0]], 2) == [(Fraction(1, 3), Fraction(0))]
    with pytest.raises(ValueError):
        check_points([[1, 2, 3]], 2)
    with pytest.raises(ValueError):
        check_points([[float("nan"), 0]], 2)


def test_params():
    est = TriangularDecomposer(variables="x,y,z", positive=False)
    assert est.get_params() == {"variables": "x,y,z", "positive": False}
    assert clone(est).get_params() == est.get_params()
    est.set_params(positive=True)
    assert est.positive


def test_golden2():
    f = P(GOLDEN2_F)
    est = TriangularDecomposer().fit([f, f.diff("y")])
    assert est.n_components_ == 3
    assert est.report_.total == 12
    assert list(est.predict([[0, 0], [1, 0], [2, 3], [0, 1]])) == [6, 2, 0, 0]
    m = est.transform([[0, 0], [5, 5]])
    assert m.shape == (2, 3)
    assert (m[1] == 0).all() and (m[0] != 0).any()


def test_not_fitted():
    with pytest.raises(NotFittedError):
        TriangularDecomposer().predict([[0, 0]])


def test_signed_fit():
    est = TriangularDecomposer(variables="x,y,z").fit([GOLDEN3_F1, GOLDEN3_F2])
    assert sorted(c.weight for c in est.components_) == [-2, -2, 1]
    with pytest.raises(PolyError):
        est.predict([[1, 1, 0]])
    # the line x = y = 1 lies on the first two components
    assert est.transform([[1, 1, 5], [0, 0, 0]]).tolist() == [[1, -2, 0], [0, 0, 0]]


def test_to_dict():
    est = TriangularDecomposer().fit(["x", "y"])
    assert est.to_dict() == {"components": [{"lower": "x", "upper": "y", "weight": 1}], "pending": []}
