"""Estimator-style wrapper around the decomposition.

``fit`` takes a system of two polynomials and stores the decomposition.
``transform`` and ``predict`` take exact points (rows of rationals, integers or
finite floats, one column per variable):

* ``transform(points)`` gives the weight of every fitted component whose zero set
  contains the point (``0`` elsewhere), shape ``(n_points, n_components)``.  This
  is zero-set membership only; summing a row is not a multiplicity.
* ``predict(points)`` gives the multiplicity of each point as a common zero
  (``0`` for non-zeros).  Only available for all-positive fits in two variables.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from mptd.decomp import bivariate_decompose, report_multiplicities, signed_decompose
from mptd.parse import parse_poly, parse_vars
from mptd.polyring import Poly, PolyError, VarOrder

__all__ = ["TriangularDecomposer", "check_points", "check_system"]


def check_system(system, variables=("x", "y")) -> tuple[VarOrder, Poly, Poly]:
    """Validate a two-polynomial system given as strings or :class:`Poly` values."""
    order = parse_vars(variables) if isinstance(variables, str) else VarOrder(list(variables))
    if isinstance(system, (str, Poly)) or len(system) != 2:
        raise ValueError("a system is a pair of polynomials")
    polys = []
    for f in system:
        if isinstance(f, str):
            f = parse_poly(f, order)
        elif isinstance(f, Poly):
            if f.order != order:
                f = f.reorder(order)
        else:
            raise TypeError(f"expected a polynomial or a string, got {type(f).__name__}")
        if f.is_zero():
            raise ValueError("zero polynomial in the system")
        polys.append(f)
    return order, polys[0], polys[1]


def _exact(v) -> Fraction:
    if isinstance(v, (bool, np.bool_)):
        raise TypeError("boolean coordinate")
    if isinstance(v, (int, np.integer, Rational)):
        return Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    f = float(v)
    if not math.isfinite(f):
        raise ValueError(f"non-finite coordinate {v!r}")
    return Fraction(f)


def check_points(points, n_vars: int) -> list[tuple[Fraction, ...]]:
    """Rows of exact coordinates; accepts nested sequences or 2-d arrays."""
    rows = list(points)
    out = []
    for r in rows:
        r = list(r)
        if len(r) != n_vars:
            raise ValueError(f"each point needs {n_vars} coordinates, got {len(r)}")
        out.append(tuple(_exact(v) for v in r))
    return out


def _vanishes(p: Poly, point: dict) -> bool:
    return p.evaluate(point) == 0


class TriangularDecomposer(BaseEstimator):
    """Multiplicity preserving decomposition of a two-polynomial system.

    Parameters
    ----------
    variables : str or sequence of str
        Variable order, lowest first; the last one is eliminated first.
    positive : bool
        In two variables, cancel negative components so every weight is positive.
    """

    def __init__(self, variables="x,y", positive=True):
        self.variables = variables
        self.positive = positive

    def fit(self, X, y=None):
        order, f1, f2 = check_system(X, self.variables)
        if len(order) == 2 and self.positive:
            d = bivariate_decompose(f1, f2)
        else:
            d = signed_decompose(f1, f2)
        self.order_ = order
        self.decomposition_ = d
        self.components_ = list(d.components)
        self.n_components_ = len(self.components_)
        self.report_ = report_multiplicities(d) if len(order) == 2 and not d.negatives else None
        return self

    def _point_maps(self, points):
        names = self.order_.names
        return [dict(zip(names, p)) for p in check_points(points, len(names))]

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "decomposition_")
        pts = self._point_maps(X)
        out = np.zeros((len(pts), self.n_components_), dtype=np.int64)
        for j, c in enumerate(self.components_):
            t = c.triset
            for i, p in enumerate(pts):
                if _vanishes(t.lower, p) and _vanishes(t.upper, p):
                    out[i, j] = c.weight
        return out

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "decomposition_")
        if self.report_ is None:
            # signed weights are multiplicities of whole components, not of points
            raise PolyError("point multiplicities need an all-positive decomposition in two variables")
        pts = self._point_maps(X)
        out = np.zeros(len(pts), dtype=np.int64)
        for i, p in enumerate(pts):
            for t, m in self.report_.points:
                if _vanishes(t.lower, p) and _vanishes(t.upper, p):
                    out[i] = m
                    break
        return out

    def to_dict(self) -> dict:
        check_is_fitted(self, "decomposition_")
        return self.decomposition_.to_dict()
