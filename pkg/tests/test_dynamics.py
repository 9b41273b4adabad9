import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lpgradual import (
    Constant,
    GeometricMean,
    Max,
    PNormCombine,
    Projection,
    Scale,
    ScoringBase,
    WedgeNorm,
    WeightedSum,
    apply_dynamics,
    check_order_reversing,
    eval_aggregator,
    fixpoint,
)
from lpgradual.dynamics import DimensionError, iterate_from

N = 4
unit = st.floats(0.0, 1.0, allow_nan=False)
unit_vec = arrays(np.float64, (N,), elements=unit)


def test_wedge_norm_sum():
    g = WedgeNorm(np.ones(4), 1)
    assert eval_aggregator(g, [0.43, 0.3, 0.38, 0.3]) == pytest.approx(1.41, abs=1e-15)


def test_projection():
    assert eval_aggregator(Projection(2), [0.1, 0.2, 0.3]) == 0.3


def test_geometric_mean():
    g = GeometricMean((Projection(0), Projection(1)))
    assert eval_aggregator(g, [0.25, 1.0]) == pytest.approx(math.sqrt(0.25 * 1.0), rel=1e-15)
    assert eval_aggregator(g, [0.0, 1.0]) == 0.0


def test_empty_combinators_are_zero():
    assert eval_aggregator(Max(()), [0.5]) == 0.0
    assert eval_aggregator(PNormCombine(2, ()), [0.5]) == 0.0


def test_pnorm_combine():
    g = PNormCombine(2, (Projection(0), Projection(1)))
    assert eval_aggregator(g, [0.3, 0.4]) == pytest.approx(0.5, rel=1e-15)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        eval_aggregator(Projection(3), [0.1, 0.2])
    with pytest.raises(DimensionError):
        eval_aggregator(WedgeNorm(np.ones(3)), [0.1, 0.2])


def test_negative_coefficients_rejected():
    with pytest.raises(ValueError):
        WeightedSum((-1.0,), (Projection(0),))
    with pytest.raises(ValueError):
        Scale(-2.0, Projection(0))
    with pytest.raises(ValueError):
        WedgeNorm([-1.0, 0.0])


# combinator trees over N inputs, all in B+HI
leaves = st.builds(Projection, st.integers(0, N - 1)) | st.builds(
    WedgeNorm, arrays(np.float64, (N,), elements=st.floats(0, 3)), st.sampled_from([1.0, 2.0, 3.5, math.inf])
)


def _extend(children):
    kids = st.lists(children, min_size=1, max_size=3).map(tuple)
    return (
        kids.flatmap(lambda ks: st.builds(WeightedSum, st.tuples(*[st.floats(0, 2)] * len(ks)), st.just(ks)))
        | st.builds(Max, kids)
        | st.builds(GeometricMean, kids)
        | st.builds(PNormCombine, st.floats(0.5, 6), kids)
        | st.builds(Scale, st.floats(0, 2), children)
    )


trees = st.recursive(leaves, _extend, max_leaves=6)


@settings(max_examples=300, deadline=None)
@given(trees, unit_vec, unit)
def test_homogeneity(g, x, t):
    gx = eval_aggregator(g, x)
    assert abs(eval_aggregator(g, t * x) - t * gx) <= 1e-12 * (1 + abs(gx))


@settings(max_examples=300, deadline=None)
@given(trees, unit_vec, unit_vec)
def test_monotone_and_non_negative(g, x, u):
    y = x + (1 - x) * u
    gx, gy = eval_aggregator(g, x), eval_aggregator(g, y)
    assert gx >= 0
    assert gx <= gy * (1 + 1e-12) + 1e-15


def test_apply_dynamics_examples():
    b = ScoringBase([0.39], [Projection(0)])
    assert apply_dynamics(b, [0.0]).tolist() == [0.39]
    assert apply_dynamics(b, [0.39])[0] == pytest.approx(0.39 / 1.39, rel=1e-15)
    z = ScoringBase(np.zeros(3), [Projection(0), Max((Projection(1), Projection(2))), Constant(0.0)])
    assert apply_dynamics(z, [0.2, 0.9, 0.4]).tolist() == [0.0, 0.0, 0.0]


def test_scoring_base_validation():
    with pytest.raises(ValueError):
        ScoringBase([1.2], [Projection(0)])
    with pytest.raises(DimensionError):
        ScoringBase([0.5, 0.5], [Projection(0)])


def test_fixpoint_self_attacker():
    res = fixpoint(ScoringBase([0.39], [Projection(0)]))
    # positive root of x^2 + x - 0.39 = 0
    root = (-1 + math.sqrt(1 + 4 * 0.39)) / 2
    assert res.converged
    assert res.bracket_gap <= 1e-12
    assert abs(res.point[0] - root) <= res.bracket_gap + 1e-16
    assert root == pytest.approx(0.3, abs=1e-15)


def test_fixpoint_unattacked():
    res = fixpoint(ScoringBase([0.43], [Constant(0.0)]))
    assert res.point.tolist() == [0.43]
    assert res.iterations <= 2


def test_fixpoint_golden_ratio():
    res = fixpoint(ScoringBase([1.0], [Projection(0)]))
    assert res.point[0] == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-12)


def test_fixpoint_reports_non_convergence():
    res = fixpoint(ScoringBase([1.0], [Projection(0)]), tol=1e-12, max_iter=4)
    assert not res.converged
    assert res.iterations == 4
    assert res.bracket_gap > 1e-12


def test_fixpoint_rejects_bad_tol():
    with pytest.raises(ValueError):
        fixpoint(ScoringBase([1.0], [Projection(0)]), tol=0)


def _random_base(rng, n):
    c = rng.random(n)
    c[rng.random(n) < 0.2] = 0
    f = []
    for i in range(n):
        kind = rng.integers(4)
        if kind == 0:
            f.append(WedgeNorm(rng.random(n) * (rng.random(n) < 0.5) * 2, rng.choice([1, 2, np.inf])))
        elif kind == 1:
            f.append(Max(tuple(Projection(int(j)) for j in rng.integers(0, n, 2))))
        elif kind == 2:
            f.append(GeometricMean((Projection(int(rng.integers(n))), Scale(3.0, Projection(int(rng.integers(n)))))))
        else:
            f.append(WeightedSum((0.5, 1.5), (Projection(i), Projection(int(rng.integers(n))))))
    return ScoringBase(c, f)


@pytest.mark.parametrize("seed", range(20))
def test_bracketing_and_uniqueness(seed):
    rng = np.random.default_rng(seed)
    b = _random_base(rng, int(rng.integers(1, 7)))
    tol = 1e-12
    res = fixpoint(b, tol, record=True)
    assert res.converged
    evens = [lo for lo, _ in res.history]
    odds = [hi for _, hi in res.history]
    for k in range(len(evens)):
        assert np.all(evens[k] <= odds[k])
        if k:
            assert np.all(evens[k - 1] <= evens[k])
            assert np.all(odds[k] <= odds[k - 1])
    assert np.max(np.abs(apply_dynamics(b, res.point) - res.point)) <= res.bracket_gap
    assert np.all(res.point <= res.upper)
    for _ in range(10):
        start = rng.random(b.n)
        other = iterate_from(b, start, res.iterations + 200)
        assert np.max(np.abs(other - res.point)) <= 10 * tol


@pytest.mark.parametrize("seed", range(10))
def test_order_reversing(seed):
    rng = np.random.default_rng(100 + seed)
    b = _random_base(rng, int(rng.integers(1, 7)))
    assert check_order_reversing(b, trials=1000, rng_seed=seed)


def test_order_reversing_examples():
    b = ScoringBase([1.0], [Projection(0)])
    assert apply_dynamics(b, [1.0])[0] == 0.5 <= apply_dynamics(b, [0.0])[0]
    assert check_order_reversing(b, 10, rng_seed=0)


def test_order_reversing_detects_bad_map():
    # an aggregator that decreases in x makes T order preserving
    class Decreasing(Projection):
        def _eval(self, x):
            return 1.0 - float(x[self.index])

    assert not check_order_reversing(ScoringBase([1.0], [Decreasing(0)]), 50, rng_seed=0)
