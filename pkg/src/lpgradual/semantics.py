"""Named weighted gradual semantics and their original iterative definitions."""

from __future__ import annotations

import numpy as np

from .framework import Framework, WeightedFramework, remote_matrix
from .lpfamily import CardinalityFunctionals, IdentityFunctionals, SemanticsSpec
from .norms import INFINITY

SEMANTICS = ("hc", "mb", "cb", "eb", "hc-remote")
TIE_TOL = 1e-9


def hc(f: Framework) -> SemanticsSpec:
    """Weighted h-categorizer: ``p = 1``, ``mu = 1``, ``lambda = id``."""
    return SemanticsSpec(1.0, IdentityFunctionals(f.n), f.adjacency, "hc")


def mb(f: Framework) -> SemanticsSpec:
    """Weighted max-based: ``p = inf``, ``mu = 1``, ``lambda = id``."""
    return SemanticsSpec(INFINITY, IdentityFunctionals(f.n), f.adjacency, "mb")


def cb(f: Framework) -> SemanticsSpec:
    """Weighted card-based: ``p = 1`` with support-dependent functionals."""
    return SemanticsSpec(1.0, CardinalityFunctionals(f.adjacency), f.adjacency, "cb")


def eb(f: Framework) -> SemanticsSpec:
    """Weighted Euclidean-based: ``p = 2``, ``mu = 1``, ``lambda = id``."""
    return SemanticsSpec(2.0, IdentityFunctionals(f.n), f.adjacency, "eb")


def hc_remote(f: Framework, delta: float = 0.5, depth: int = 2) -> SemanticsSpec:
    """h-categorizer over ``A + delta A^2 + ... `` (remote attacks)."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if depth < 2:
        raise ValueError(f"depth must be >= 2, got {depth}")
    a = remote_matrix(f, delta, depth)
    return SemanticsSpec(1.0, IdentityFunctionals(f.n), a, "hc-remote")


def get_spec(name: str, f: Framework, *, delta: float = 0.5, depth: int = 2) -> SemanticsSpec:
    key = name.strip().lower()
    if key == "hc-remote":
        return hc_remote(f, delta, depth)
    try:
        ctor = {"hc": hc, "mb": mb, "cb": cb, "eb": eb}[key]
    except KeyError:
        raise ValueError(
            f"unknown semantics {name!r}; expected one of {', '.join(SEMANTICS)}"
        ) from None
    return ctor(f)


def oracle_iterate(name: str, wf: WeightedFramework, k: int) -> np.ndarray:
    """k-th iterate of the textbook recursion for ``hc``, ``mb``, ``cb`` or ``eb``.

    Starts from the weights themselves and loops over explicit attacker
    lists, sharing no code with the scoring-base solver.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    name = name.strip().lower()
    if name not in ("hc", "mb", "cb", "eb"):
        raise ValueError(f"no oracle recursion for {name!r}")
    f = wf.framework
    w = [float(v) for v in wf.weights]
    n = f.n
    att = [[j for j in range(n) if f.adjacency[i][j] > 0] for i in range(n)]
    # Att*(a): attackers with positive weight, fixed by w
    att_star = [[j for j in att[i] if w[j] > 0] for i in range(n)]
    cur = list(w)
    for _ in range(k):
        nxt = []
        for i in range(n):
            if name == "hc":
                denom = 1.0 + sum(cur[j] for j in att[i])
            elif name == "mb":
                denom = 1.0 + max((cur[j] for j in att[i]), default=0.0)
            elif name == "eb":
                denom = 1.0 + sum(cur[j] ** 2 for j in att[i]) ** 0.5
            else:
                m = len(att_star[i])
                denom = 1.0 + m
                if m:
                    denom += sum(cur[j] for j in att_star[i]) / m
            nxt.append(w[i] / denom)
        cur = nxt
    return np.array(cur)


def ranking(degrees, argument_ids=None, tie_tol: float = TIE_TOL) -> list[list[str]]:
    """Ascending groups of equally ranked arguments.

    Arguments within ``tie_tol`` of a group's lowest degree share the group.
    """
    d = np.asarray(degrees, dtype=np.float64)
    if argument_ids is None:
        argument_ids = [f"a{i}" for i in range(d.size)]
    order = sorted(range(d.size), key=lambda i: (d[i], i))
    groups: list[list[int]] = []
    for i in order:
        if groups and d[i] - d[groups[-1][0]] <= tie_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [[argument_ids[i] for i in sorted(g)] for g in groups]


def format_ranking(groups: list[list[str]]) -> str:
    return " ◁ ".join(" ≃ ".join(g) for g in groups)
