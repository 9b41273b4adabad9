"""(L^p, lambda, mu, A)-based weighted scoring bases.

For a weight vector ``w`` the vertex is ``kappa(w)_i = mu(w)_i * w_i`` and the
attack aggregator is ``phi(w)(x)_i = ||lambda(w)(a_i) * x||_p`` where ``a_i``
is row ``i`` of the matrix. ``mu`` and ``lambda`` may only depend on the
support of their argument, so both are keyed on a 0/1 support mask.

``lambda`` is restricted to row-wise scalings: ``lambda^I(a_i) = s^I_i * a_i``
for a non-negative matrix ``s^I``. This covers every named semantics here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dynamics import DEFAULT_MAX_ITER, DEFAULT_TOL, FixpointResult, ScoringBase, WedgeNorm, fixpoint
from .framework import Framework, support_mask
from .norms import INFINITY, check_p, lp_norm, row_norms, wedge

__all__ = [
    "INFINITY",
    "SupportFunctionals",
    "IdentityFunctionals",
    "CardinalityFunctionals",
    "SemanticsSpec",
    "lp_norm",
    "wedge",
    "make_kappa",
    "make_phi",
    "make_base",
    "solve_scheme",
]


class SupportFunctionals:
    """``mu`` and ``lambda`` as functions of a support mask.

    Subclasses implement :meth:`_mu` and :meth:`_scaling` for a hashable mask
    (a tuple of bools); results are cached per support.
    """

    def mu(self, mask) -> np.ndarray:
        return self._mu_cached(_key(mask))

    def scaling(self, mask) -> np.ndarray:
        """n x n matrix whose row ``i`` scales ``a_i`` entrywise."""
        return self._scaling_cached(_key(mask))

    @lru_cache(maxsize=256)
    def _mu_cached(self, key):
        mu = np.asarray(self._mu(key), dtype=np.float64)
        if np.any(~((mu > 0) & (mu <= 1))):
            raise ValueError("mu entries must lie in (0, 1]")
        mu.setflags(write=False)
        return mu

    @lru_cache(maxsize=256)
    def _scaling_cached(self, key):
        s = np.asarray(self._scaling(key), dtype=np.float64)
        if np.any(s < 0):
            raise ValueError("lambda scalings must be non-negative")
        s.setflags(write=False)
        return s

    def _mu(self, key):
        raise NotImplementedError

    def _scaling(self, key):
        raise NotImplementedError


def _key(mask) -> tuple[bool, ...]:
    return tuple(bool(m) for m in np.asarray(mask).ravel())


class IdentityFunctionals(SupportFunctionals):
    """``mu = 1`` and ``lambda = id``."""

    def __init__(self, n: int):
        self.n = n

    def _mu(self, key):
        return np.ones(self.n)

    def _scaling(self, key):
        return np.ones((self.n, self.n))


class CardinalityFunctionals(SupportFunctionals):
    """Card-based functionals.

    ``theta_i = ||a_i * supp||_1``, ``mu_i = 1/(1+theta_i)`` and
    ``lambda(a_i) = (mu_i/theta_i) * (a_i * supp)``, zero when ``theta_i = 0``.
    Since ``lambda`` is applied to ``a_i`` itself, the scaling row is
    ``(mu_i/theta_i) * supp``.
    """

    def __init__(self, matrix):
        self.matrix = np.asarray(matrix, dtype=np.float64)

    def theta(self, mask) -> np.ndarray:
        return self.matrix @ np.asarray(mask, dtype=np.float64)

    def _mu(self, key):
        return 1.0 / (1.0 + self.theta(key))

    def _scaling(self, key):
        theta = self.theta(key)
        mu = 1.0 / (1.0 + theta)
        coef = np.divide(mu, theta, out=np.zeros_like(theta), where=theta != 0)
        return np.outer(coef, np.asarray(key, dtype=np.float64))


@dataclass(frozen=True, eq=False)
class SemanticsSpec:
    p: float
    functionals: SupportFunctionals
    matrix: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "p", check_p(self.p))
        a = np.array(self.matrix, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        if np.any(a < 0) or not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite and >= 0")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def mu(self, v) -> np.ndarray:
        return self.functionals.mu(support_mask(v))

    def lambda_rows(self, v) -> np.ndarray:
        """Matrix whose row ``i`` is ``lambda^{supp(v)}(a_i)``."""
        return self.functionals.scaling(support_mask(v)) * self.matrix

    def check_vector(self, v, what="vector") -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.n,):
            raise ValueError(f"{what} must have length {self.n}, got shape {v.shape}")
        if np.any(~((v >= 0) & (v <= 1))):
            raise ValueError(f"{what} entries must lie in [0, 1]")
        return v

    @classmethod
    def for_framework(cls, f: Framework, p, functionals=None, name="custom"):
        functionals = functionals or IdentityFunctionals(f.n)
        return cls(p, functionals, f.adjacency, name)


def make_kappa(spec: SemanticsSpec, w) -> np.ndarray:
    w = spec.check_vector(w, "weights")
    return spec.mu(w) * w


def make_phi(spec: SemanticsSpec, w) -> list[WedgeNorm]:
    w = spec.check_vector(w, "weights")
    rows = spec.lambda_rows(w)
    return [WedgeNorm(r, spec.p) for r in rows]


def make_base(spec: SemanticsSpec, w) -> ScoringBase:
    return ScoringBase(make_kappa(spec, w), make_phi(spec, w))


def solve_scheme(
    spec: SemanticsSpec,
    w,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    *,
    record: bool = False,
) -> FixpointResult:
    return fixpoint(make_base(spec, w), tol, max_iter, record=record)


def attack_strength(spec: SemanticsSpec, x) -> np.ndarray:
    """``||lambda^{supp(x)}(a_i) * x||_p`` for all ``i``."""
    x = np.asarray(x, dtype=np.float64)
    return row_norms(spec.lambda_rows(x), x, spec.p)
