"""Scoring bases, aggregator combinators and the bracketing fixed-point solver.

A scoring base ``(c, f)`` induces the map ``T(x)_i = c_i / (1 + f_i(x))`` on
``X = [0, 1]^n``. ``T`` is order reversing, so iterating from ``0`` gives an
increasing even subsequence and a decreasing odd subsequence that sandwich
the unique fixed point. The gap between them is a certified error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .norms import INFINITY, check_p, row_norms

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000


class DimensionError(ValueError):
    pass


# -- aggregators -------------------------------------------------------------


class Aggregator:
    """Base class for the combinator tree nodes.

    Every node maps ``x`` in ``X`` to a non-negative real and (apart from
    :class:`Constant` with ``c > 0``) is bounded, homogeneous and increasing.
    """

    def __call__(self, x) -> float:
        return eval_aggregator(self, x)

    def _eval(self, x: np.ndarray) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class Projection(Aggregator):
    index: int

    def _eval(self, x):
        if not 0 <= self.index < x.shape[0]:
            raise DimensionError(f"projection index {self.index} out of range for n={x.shape[0]}")
        return float(x[self.index])


@dataclass(frozen=True)
class Constant(Aggregator):
    """Constant aggregator. Only ``Constant(0)`` is homogeneous."""

    value: float = 0.0

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError("constant must be >= 0")

    def _eval(self, x):
        return float(self.value)


@dataclass(frozen=True)
class Scale(Aggregator):
    factor: float
    child: Aggregator

    def __post_init__(self):
        if not self.factor >= 0:
            raise ValueError("scale factor must be >= 0")

    def _eval(self, x):
        return self.factor * self.child._eval(x)


@dataclass(frozen=True)
class WeightedSum(Aggregator):
    coeffs: tuple[float, ...]
    children: tuple[Aggregator, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.coeffs) != len(self.children):
            raise ValueError("one coefficient per child required")
        if any(not a >= 0 for a in self.coeffs):
            raise ValueError("coefficients must be >= 0")

    def _eval(self, x):
        return math.fsum(a * g._eval(x) for a, g in zip(self.coeffs, self.children))


@dataclass(frozen=True)
class Max(Aggregator):
    children: tuple[Aggregator, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def _eval(self, x):
        return max((g._eval(x) for g in self.children), default=0.0)


@dataclass(frozen=True)
class GeometricMean(Aggregator):
    children: tuple[Aggregator, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def _eval(self, x):
        if not self.children:
            return 0.0
        vals = [g._eval(x) for g in self.children]
        if min(vals) == 0.0:
            return 0.0
        return math.exp(math.fsum(math.log(v) for v in vals) / len(vals))


@dataclass(frozen=True)
class PNormCombine(Aggregator):
    p: float
    children: tuple[Aggregator, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.p > 0:
            raise ValueError("p must be > 0")

    def _eval(self, x):
        vals = [g._eval(x) for g in self.children]
        m = max(vals, default=0.0)
        if m == 0.0:
            return 0.0
        if self.p == INFINITY:
            return m
        return m * math.fsum((v / m) ** self.p for v in vals) ** (1.0 / self.p)


@dataclass(frozen=True, eq=False)
class WedgeNorm(Aggregator):
    """``x -> ||v * x||_p`` for a fixed non-negative vector ``v``."""

    v: np.ndarray
    p: float = 1.0

    def __post_init__(self):
        v = np.array(self.v, dtype=np.float64)
        if v.ndim != 1 or np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("WedgeNorm vector must be finite and non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "p", check_p(self.p))

    def _eval(self, x):
        if x.shape != self.v.shape:
            raise DimensionError(f"WedgeNorm of length {self.v.size} applied to n={x.shape[0]}")
        return float(row_norms(self.v[None, :], x, self.p)[0])

    def __eq__(self, other):
        if not isinstance(other, WedgeNorm):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.v, other.v)

    def __hash__(self):
        return hash((self.p, self.v.tobytes()))


def eval_aggregator(g: Aggregator, x) -> float:
    return g._eval(np.asarray(x, dtype=np.float64))


# -- scoring base and dynamics -------------------------------------------------


@dataclass(frozen=True, eq=False)
class ScoringBase:
    c: np.ndarray
    f: tuple[Aggregator, ...]
    _rows: np.ndarray | None = field(default=None, init=False, repr=False)
    _p: float | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        c = np.array(self.c, dtype=np.float64)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("vertex c must be a non-empty vector")
        if np.any(~((c >= 0) & (c <= 1))):
            raise ValueError("vertex entries must lie in [0, 1]")
        f = tuple(self.f)
        if len(f) != c.size:
            raise DimensionError(f"need {c.size} aggregators, got {len(f)}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "f", f)
        # rows of WedgeNorms sharing one exponent evaluate as a single matrix op
        if all(isinstance(g, WedgeNorm) for g in f) and len({g.p for g in f}) == 1:
            rows = np.vstack([g.v for g in f])
            if rows.shape[1] != c.size:
                raise DimensionError("WedgeNorm length does not match n")
            object.__setattr__(self, "_rows", rows)
            object.__setattr__(self, "_p", f[0].p)

    @property
    def n(self) -> int:
        return self.c.size

    def aggregate(self, x: np.ndarray) -> np.ndarray:
        if self._rows is not None:
            return row_norms(self._rows, x, self._p)
        return np.array([g._eval(x) for g in self.f])

    def __call__(self, x) -> np.ndarray:
        return apply_dynamics(self, x)


def apply_dynamics(b: ScoringBase, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (b.n,):
        raise DimensionError(f"expected a vector of length {b.n}, got shape {x.shape}")
    return b.c / (1.0 + b.aggregate(x))


@dataclass(frozen=True)
class FixpointResult:
    point: np.ndarray
    iterations: int
    bracket_gap: float
    converged: bool
    upper: np.ndarray | None = None
    # (even, odd) pairs u^(2k), u^(2k-1); only kept when requested
    history: list | None = field(default=None, repr=False)

    @property
    def bracket_ok(self) -> bool:
        """Whether every recorded pair satisfied ``u^(2k) <= u^(2k-1)``."""
        if self.history is None:
            raise ValueError("solve with record=True to inspect the bracket history")
        return all(np.all(lo <= hi) for lo, hi in self.history)


def fixpoint(
    b: ScoringBase,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    *,
    record: bool = False,
) -> FixpointResult:
    """Iterate ``T`` from ``0`` until the even/odd bracket is narrower than ``tol``.

    The fixed point lies componentwise in ``[u^(2k), u^(2k-1)]``; the returned
    point is the lower (even) iterate and ``bracket_gap`` bounds its error in
    the max norm.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    lo = np.zeros(b.n)
    hi = None
    gap = math.inf
    it = 0
    history = [] if record else None
    while it + 2 <= max_iter:
        hi = apply_dynamics(b, lo)
        lo = apply_dynamics(b, hi)
        it += 2
        if history is not None:
            history.append((lo, hi))
        gap = float(np.max(hi - lo))
        if gap <= tol:
            break
    if hi is None:
        gap = float(np.max(b.c)) if b.n else 0.0
        hi = b.c.copy()
    return FixpointResult(
        point=lo,
        iterations=it,
        bracket_gap=max(gap, 0.0),
        converged=gap <= tol,
        upper=hi,
        history=history,
    )


def check_order_reversing(b: ScoringBase, trials: int = 1000, rng_seed=None) -> bool:
    """Randomized check that ``x <= y`` implies ``T(y) <= T(x)``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(rng_seed)
    corners = [(np.zeros(b.n), np.ones(b.n))]
    for x, y in corners:
        if np.any(apply_dynamics(b, y) > apply_dynamics(b, x)):
            return False
    for _ in range(trials):
        x = rng.random(b.n)
        y = x + (1.0 - x) * rng.random(b.n)
        if rng.random() < 0.3:
            x[rng.random(b.n) < 0.5] = 0.0
        if np.any(apply_dynamics(b, y) > apply_dynamics(b, x)):
            return False
    return True


def iterate_from(b: ScoringBase, x0: Sequence[float], steps: int) -> np.ndarray:
    """Plain iteration ``T^steps(x0)`` without a stopping rule."""
    x = np.asarray(x0, dtype=np.float64)
    for _ in range(steps):
        x = apply_dynamics(b, x)
    return x
