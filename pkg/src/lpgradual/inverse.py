"""Inverse-type problems for (L^p, lambda, mu, A)-based schemes.

The discerning right inverse is

    inv(x)_i = x_i * (1 + ||lambda(x)(a_i) * x||_p) / mu(x)_i

and ``x`` is a realizable degree vector exactly when ``inv(x)`` is a valid
weight vector. Everything else here (membership, feasible scaling, radial
probing, round trips) is built on that one formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import DEFAULT_MAX_ITER, DEFAULT_TOL
from .framework import Framework, support_mask
from .lpfamily import SemanticsSpec, attack_strength, solve_scheme

BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class InversionReport:
    candidate_weights: np.ndarray
    in_degree_space: bool
    violations: list[tuple[int, float]] = field(default_factory=list)


@dataclass(frozen=True)
class ScalingReport:
    t_star: float
    scaled_degrees: np.ndarray
    weights: np.ndarray
    capped: bool = False


def _violations(candidate: np.ndarray) -> list[tuple[int, float]]:
    bad = (candidate < -BOUNDARY_TOL) | (candidate > 1.0 + BOUNDARY_TOL)
    return [(int(i), float(candidate[i])) for i in np.flatnonzero(bad)]


def invert(spec: SemanticsSpec, x) -> InversionReport:
    x = spec.check_vector(x, "degrees")
    candidate = x * (1.0 + attack_strength(spec, x)) / spec.mu(x)
    bad = _violations(candidate)
    return InversionReport(candidate, not bad, bad)


def membership(spec: SemanticsSpec, x) -> bool:
    """Whether ``x`` is a realizable degree vector; False for ``x`` outside X."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape == (spec.n,) and np.any(~((x >= 0) & (x <= 1))):
        return False
    return invert(spec, x).in_degree_space


def invert_closed_form(name: str, f: Framework | np.ndarray, x) -> np.ndarray:
    """Semantics-specific inverse written directly in terms of the matrix."""
    a = f.adjacency if isinstance(f, Framework) else np.asarray(f, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    key = name.strip().lower()
    if key == "hc":
        # (I + diag(x) A) x
        return x + x * (a @ x)
    if key == "mb":
        m = a * x[None, :]
        # lowest index wins ties; the value is the same either way
        cols = np.argmax(m, axis=1)
        return x * (1.0 + m[np.arange(x.size), cols])
    if key == "eb":
        return x * (1.0 + np.sqrt((a * x[None, :]) ** 2 @ np.ones(x.size)))
    if key == "cb":
        s = a @ support_mask(x)
        s_inv = np.divide(1.0, s, out=np.zeros_like(s), where=s != 0)
        return x * (1.0 + s + s_inv * (a @ (support_mask(x) * x)))
    raise ValueError(f"no closed-form inverse for {name!r}")


def _scale_limits(spec: SemanticsSpec, y: np.ndarray) -> np.ndarray:
    # phi(ty) = t*c and the support of ty is fixed for t > 0, so coordinate i
    # stays feasible while t*y_i*(1 + t*c_i) <= mu_i
    mu = spec.mu(y)
    c = attack_strength(spec, y)
    limits = np.full(y.size, np.inf)
    pos = y > 0
    yp, cp, mp = y[pos], c[pos], mu[pos]
    # rationalized positive root of c y t^2 + y t - mu = 0, valid for c = 0
    limits[pos] = 2.0 * mp / (yp + np.sqrt(yp * yp + 4.0 * cp * yp * mp))
    return limits


def scale_to_feasible(spec: SemanticsSpec, y) -> ScalingReport:
    """Largest ``t`` with ``t*y`` a realizable degree vector (and in X)."""
    y = spec.check_vector(y, "target")
    if not np.any(y > 0):
        raise ValueError("target must be non-zero")
    t = float(np.min(_scale_limits(spec, y)))
    cap = 1.0 / float(np.max(y))
    capped = cap <= t
    t = min(t, cap)
    while True:
        ty = np.minimum(t * y, 1.0)
        rep = invert(spec, ty)
        if rep.in_degree_space:
            break
        # rounding pushed us just outside; step down one ulp at a time
        t = math.nextafter(t, 0.0)
    return ScalingReport(t, ty, np.clip(rep.candidate_weights, 0.0, 1.0), capped)


def scale_by_bisection(spec: SemanticsSpec, y, iters: int = 200) -> float:
    """Reference value of the maximal scale found by bisecting on membership.

    Relies on radiality: membership of ``t*y`` is monotone in ``t``.
    """
    y = spec.check_vector(y, "target")
    lo, hi = 0.0, 1.0 / float(np.max(y))
    if membership(spec, hi * y):
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if membership(spec, mid * y):
            lo = mid
        else:
            hi = mid
    return lo


def evaluate_scale(spec: SemanticsSpec, y, t: float) -> InversionReport:
    """Inversion report for the scaled target ``t*y``."""
    y = np.asarray(y, dtype=np.float64)
    if not t > 0:
        raise ValueError("t must be > 0")
    ty = t * y
    if np.any(ty > 1.0):
        idx = [(int(i), float(ty[i])) for i in np.flatnonzero(ty > 1.0)]
        return InversionReport(ty, False, idx)
    return invert(spec, ty)


def radial_probe(spec: SemanticsSpec, x, grid: int = 100) -> bool:
    if grid < 2:
        raise ValueError("grid must be >= 2")
    x = spec.check_vector(x, "degrees")
    return all(membership(spec, (k / grid) * x) for k in range(grid + 1))


def roundtrip(spec: SemanticsSpec, w, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER):
    """Solve forward, invert, and report the max-norm weight recovery error."""
    w = spec.check_vector(w, "weights")
    forward = solve_scheme(spec, w, tol, max_iter).point
    recovered = invert(spec, forward).candidate_weights
    return forward, recovered, float(np.max(np.abs(recovered - w)))
