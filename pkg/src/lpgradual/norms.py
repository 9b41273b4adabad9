"""L^p norms and the element-wise (wedge) product on non-negative vectors."""

from __future__ import annotations

import math

import numpy as np

INFINITY = math.inf


def check_p(p) -> float:
    """Validate an exponent in ``[1, inf]`` and return it as a float."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"p must lie in [1, inf], got {p}")
    return p


def lp_norm(v, p) -> float:
    v = np.asarray(v, dtype=np.float64)
    if np.any(v < 0):
        raise ValueError("lp_norm expects a non-negative vector")
    p = check_p(p)
    if v.size == 0:
        return 0.0
    m = float(v.max())
    if m == 0.0:
        return 0.0
    if p == INFINITY:
        return m
    if p == 1.0:
        return float(v.sum())
    # factor out the max so large p cannot overflow
    return m * float(np.sum((v / m) ** p)) ** (1.0 / p)


def wedge(x, y) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return x * y


def row_norms(rows: np.ndarray, x: np.ndarray, p: float) -> np.ndarray:
    """``||rows[i] * x||_p`` for every row; ``rows`` and ``x`` non-negative."""
    z = rows * x
    if p == 1.0:
        return z.sum(axis=1)
    m = z.max(axis=1) if z.shape[1] else np.zeros(z.shape[0])
    if p == INFINITY:
        return m
    out = np.zeros(z.shape[0])
    nz = m > 0
    if np.any(nz):
        mm = m[nz]
        out[nz] = mm * np.sum((z[nz] / mm[:, None]) ** p, axis=1) ** (1.0 / p)
    return out
