"""Weighted argumentation frameworks and their adjacency matrices.

Arguments are indexed in listing order; every vector in the package is
aligned to that order. ``adjacency[i, j] > 0`` means argument ``j`` attacks
argument ``i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class FrameworkError(ValueError):
    """Raised for malformed frameworks or WAF files."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Framework:
    argument_ids: tuple[str, ...]
    attacks: frozenset[tuple[int, int]]
    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self):
        ids = tuple(self.argument_ids)
        if not ids:
            raise FrameworkError("a framework needs at least one argument")
        if len(set(ids)) != len(ids):
            raise FrameworkError("duplicate argument id")
        n = len(ids)
        adj = np.array(self.adjacency, dtype=np.float64)
        if adj.shape != (n, n):
            raise FrameworkError(f"adjacency must be {n}x{n}, got {adj.shape}")
        if not np.all(np.isfinite(adj)) or np.any(adj < 0):
            raise FrameworkError("adjacency entries must be finite and >= 0")
        for j, i in self.attacks:
            if not (0 <= i < n and 0 <= j < n):
                raise FrameworkError(f"attack ({j}, {i}) out of range")
        object.__setattr__(self, "argument_ids", ids)
        object.__setattr__(self, "attacks", frozenset(self.attacks))
        object.__setattr__(self, "adjacency", _frozen(adj))

    @property
    def n(self) -> int:
        return len(self.argument_ids)

    def index(self, arg_id: str) -> int:
        try:
            return self.argument_ids.index(arg_id)
        except ValueError:
            raise FrameworkError(f"unknown argument {arg_id!r}") from None

    @classmethod
    def from_matrix(cls, adjacency, argument_ids: Sequence[str] | None = None) -> "Framework":
        """Generalized framework over an arbitrary non-negative matrix."""
        adj = np.asarray(adjacency, dtype=np.float64)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise FrameworkError("adjacency must be a square matrix")
        if argument_ids is None:
            argument_ids = [f"a{i}" for i in range(adj.shape[0])]
        targets, attackers = np.nonzero(adj)
        attacks = frozenset(zip(attackers.tolist(), targets.tolist()))
        return cls(tuple(argument_ids), attacks, adj)

    def __eq__(self, other):
        if not isinstance(other, Framework):
            return NotImplemented
        return (
            self.argument_ids == other.argument_ids
            and self.attacks == other.attacks
            and np.array_equal(self.adjacency, other.adjacency)
        )

    def __hash__(self):
        return hash((self.argument_ids, self.attacks))


@dataclass(frozen=True, eq=False)
class WeightedFramework:
    framework: Framework
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        if w.shape != (self.framework.n,):
            raise FrameworkError(
                f"expected {self.framework.n} weights, got shape {w.shape}"
            )
        bad = np.flatnonzero(~((w >= 0) & (w <= 1)))
        if bad.size:
            i = int(bad[0])
            raise FrameworkError(
                f"weight out of range for {self.framework.argument_ids[i]!r}: {w[i]}"
            )
        object.__setattr__(self, "weights", _frozen(w))

    def __eq__(self, other):
        if not isinstance(other, WeightedFramework):
            return NotImplemented
        return self.framework == other.framework and np.array_equal(
            self.weights, other.weights
        )

    def __hash__(self):
        return hash((self.framework, self.weights.tobytes()))


def build_framework(
    argument_ids: Sequence[str], attacks: Iterable[tuple[str, str]]
) -> Framework:
    """Build a 0/1 framework from ids and ``(attacker, target)`` pairs."""
    ids = tuple(argument_ids)
    if len(set(ids)) != len(ids):
        seen = set()
        dup = next(a for a in ids if a in seen or seen.add(a))
        raise FrameworkError(f"duplicate argument id {dup!r}")
    pos = {a: k for k, a in enumerate(ids)}
    n = len(ids)
    adj = np.zeros((n, n))
    pairs = set()
    for attacker, target in attacks:
        for a in (attacker, target):
            if a not in pos:
                raise FrameworkError(f"unknown argument {a!r} in attack")
        j, i = pos[attacker], pos[target]
        adj[i, j] = 1.0
        pairs.add((j, i))
    return Framework(ids, frozenset(pairs), adj)


def attackers(f: Framework, i: int) -> frozenset[int]:
    if not 0 <= i < f.n:
        raise IndexError(f"argument index {i} out of range for n={f.n}")
    return frozenset(np.flatnonzero(f.adjacency[i] > 0).tolist())


def support(v) -> frozenset[int]:
    return frozenset(np.flatnonzero(np.asarray(v) != 0).tolist())


def support_mask(v) -> np.ndarray:
    """Support as a 0/1 float vector."""
    return (np.asarray(v) != 0).astype(np.float64)


def remote_matrix(f: Framework | np.ndarray, delta: float, depth: int = 2) -> np.ndarray:
    """Truncated remote-attack matrix ``sum_{k=1..depth} delta**(k-1) A**k``."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    a = f.adjacency if isinstance(f, Framework) else np.asarray(f, dtype=np.float64)
    out = a.copy()
    power = a
    for k in range(2, depth + 1):
        power = power @ a
        out = out + delta ** (k - 1) * power
    return out


# -- WAF files -------------------------------------------------------------


def _framework_from_dict(doc) -> Framework:
    if not isinstance(doc, dict):
        raise FrameworkError("WAF document must be a JSON object")
    for key in ("arguments", "attacks"):
        if key not in doc:
            raise FrameworkError(f"missing field {key!r}")
    args = doc["arguments"]
    if not isinstance(args, list) or not all(isinstance(a, str) for a in args):
        raise FrameworkError("field 'arguments' must be a list of strings")
    if not isinstance(doc["attacks"], list):
        raise FrameworkError("field 'attacks' must be a list")
    attacks = []
    for k, pair in enumerate(doc["attacks"]):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(a, str) for a in pair)):
            raise FrameworkError(f"attacks[{k}] must be an [attacker, target] pair")
        attacks.append((pair[0], pair[1]))
    return build_framework(args, attacks)


def waf_from_dict(doc: dict) -> WeightedFramework:
    f = _framework_from_dict(doc)
    args = list(f.argument_ids)
    if "weights" not in doc:
        raise FrameworkError("missing field 'weights'")
    weights = doc["weights"]
    if not isinstance(weights, dict):
        raise FrameworkError("field 'weights' must be an object")
    extra = set(weights) - set(args)
    if extra:
        raise FrameworkError(f"weights given for unknown argument {sorted(extra)[0]!r}")
    w = []
    for a in args:
        if a not in weights:
            raise FrameworkError(f"weights[{a!r}] missing")
        val = weights[a]
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise FrameworkError(f"weights[{a!r}] is not a number")
        if not 0.0 <= val <= 1.0:
            raise FrameworkError(f"weight out of range for {a!r}: {val}")
        w.append(float(val))
    return WeightedFramework(f, np.array(w))


def waf_to_dict(wf: WeightedFramework) -> dict:
    f = wf.framework
    ids = f.argument_ids
    # stable attack order: by target, then attacker
    pairs = sorted(f.attacks, key=lambda p: (p[1], p[0]))
    return {
        "arguments": list(ids),
        "attacks": [[ids[j], ids[i]] for j, i in pairs],
        "weights": {a: float(x) for a, x in zip(ids, wf.weights)},
    }


def _read_json(path: Path):
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameworkError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc


def load_waf(path) -> WeightedFramework:
    path = Path(path)
    doc = _read_json(path)
    try:
        return waf_from_dict(doc)
    except FrameworkError as exc:
        raise FrameworkError(f"{path}: {exc}") from exc


def load_framework(path) -> Framework:
    """Read only the graph part of a WAF file; weights, if present, are checked."""
    path = Path(path)
    doc = _read_json(path)
    try:
        if isinstance(doc, dict) and "weights" in doc:
            return waf_from_dict(doc).framework
        return _framework_from_dict(doc)
    except FrameworkError as exc:
        raise FrameworkError(f"{path}: {exc}") from exc


def save_waf(wf: WeightedFramework, path) -> None:
    # json uses repr() for floats, which is the shortest round-trip form
    Path(path).write_text(json.dumps(waf_to_dict(wf), indent=2) + "\n", encoding="utf-8")
