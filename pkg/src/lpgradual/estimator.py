"""scikit-learn style wrapper around a named semantics on a fixed graph.

Rows of the input matrix are weight vectors (``transform``) or degree
vectors (``inverse_transform``); columns are arguments in framework order.

>>> from lpgradual import build_framework, GradualSemantics
>>> f = build_framework(["a", "b"], [("a", "b")])
>>> GradualSemantics(f, semantics="hc").fit().transform([[1.0, 1.0]]).round(3)
array([[1. , 0.5]])
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .dynamics import DEFAULT_MAX_ITER, DEFAULT_TOL
from .framework import Framework, WeightedFramework
from .inverse import invert, radial_probe, scale_to_feasible
from .lpfamily import solve_scheme
from .semantics import get_spec


class NotConvergedError(RuntimeError):
    pass


def _unit_rows(X, n: int, what: str) -> np.ndarray:
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != n:
        raise ValueError(f"{what} has {X.shape[1]} columns, framework has {n} arguments")
    if np.any((X < 0) | (X > 1)):
        raise ValueError(f"{what} entries must lie in [0, 1]")
    return X


class GradualSemantics(TransformerMixin, BaseEstimator):
    """Forward map ``weights -> degrees`` and its analytical inverse.

    Parameters
    ----------
    framework : Framework, WeightedFramework or array-like of shape (n, n)
        The attack graph. A square array is read as an adjacency matrix.
    semantics : {"hc", "mb", "cb", "eb", "hc-remote"}
    tol, max_iter : certified solver tolerance and iteration cap.
    delta, depth : remote-attack parameters, used by ``"hc-remote"`` only.
    """

    def __init__(
        self,
        framework=None,
        semantics="hc",
        tol=DEFAULT_TOL,
        max_iter=DEFAULT_MAX_ITER,
        delta=0.5,
        depth=2,
    ):
        self.framework = framework
        self.semantics = semantics
        self.tol = tol
        self.max_iter = max_iter
        self.delta = delta
        self.depth = depth

    def _framework(self) -> Framework:
        f = self.framework
        if isinstance(f, WeightedFramework):
            return f.framework
        if isinstance(f, Framework):
            return f
        if f is None:
            raise ValueError("GradualSemantics needs a framework")
        return Framework.from_matrix(f)

    def fit(self, X=None, y=None):
        f = self._framework()
        self.spec_ = get_spec(self.semantics, f, delta=self.delta, depth=self.depth)
        self.argument_ids_ = list(f.argument_ids)
        self.n_features_in_ = f.n
        if X is not None:
            _unit_rows(X, f.n, "X")
        return self

    def transform(self, X):
        check_is_fitted(self, "spec_")
        X = _unit_rows(X, self.n_features_in_, "weights")
        out = np.empty_like(X)
        self.iterations_ = np.empty(X.shape[0], dtype=int)
        for k, w in enumerate(X):
            res = solve_scheme(self.spec_, w, self.tol, self.max_iter)
            if not res.converged:
                raise NotConvergedError(
                    f"row {k}: bracket gap {res.bracket_gap:.3g} > tol after {res.iterations} iterations"
                )
            out[k] = res.point
            self.iterations_[k] = res.iterations
        return out

    def inverse_transform(self, X):
        """Candidate weights; rows outside the degree space fall outside [0, 1]."""
        check_is_fitted(self, "spec_")
        X = _unit_rows(X, self.n_features_in_, "degrees")
        return np.vstack([invert(self.spec_, x).candidate_weights for x in X])

    def membership(self, X) -> np.ndarray:
        """Boolean mask of rows that are realizable degree vectors."""
        check_is_fitted(self, "spec_")
        X = _unit_rows(X, self.n_features_in_, "degrees")
        return np.array([invert(self.spec_, x).in_degree_space for x in X])

    def scale(self, Y) -> np.ndarray:
        """Maximal feasible scale factor for each target row."""
        check_is_fitted(self, "spec_")
        Y = _unit_rows(Y, self.n_features_in_, "targets")
        return np.array([scale_to_feasible(self.spec_, y).t_star for y in Y])

    def radial(self, X, grid=100) -> np.ndarray:
        check_is_fitted(self, "spec_")
        X = _unit_rows(X, self.n_features_in_, "degrees")
        return np.array([radial_probe(self.spec_, x, grid) for x in X])

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "spec_")
        return np.asarray(self.argument_ids_, dtype=object)
