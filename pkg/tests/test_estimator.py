import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from lpgradual import GradualSemantics, NotConvergedError, WeightedFramework

from conftest import FIG1_W


def test_transform_matches_table1(fig1):
    est = GradualSemantics(fig1, semantics="mb").fit()
    x = est.transform(FIG1_W[None, :])
    assert np.round(x, 2).tolist() == [[0.43, 0.30, 0.58, 0.30]]
    assert est.iterations_.shape == (1,)


def test_inverse_transform_round_trip(fig1):
    rng = np.random.default_rng(0)
    W = rng.random((20, 4))
    for sem in ("hc", "mb", "cb", "eb", "hc-remote"):
        est = GradualSemantics(fig1, semantics=sem).fit(W)
        X = est.transform(W)
        assert np.max(np.abs(est.inverse_transform(X) - W)) <= 1e-8
        assert est.membership(X).all()
        assert est.radial(X[:3], grid=20).all()


def test_fit_transform_and_params(fig1):
    est = GradualSemantics(fig1, semantics="cb", tol=1e-10)
    assert est.get_params()["semantics"] == "cb"
    X = est.fit_transform(FIG1_W[None, :])
    assert X.shape == (1, 4)
    other = clone(est).set_params(semantics="hc")
    assert other.fit().spec_.name == "hc"
    assert list(est.get_feature_names_out()) == ["a0", "a1", "a2", "a3"]


def test_accepts_matrix_and_weighted_framework(fig1):
    a = GradualSemantics(fig1.adjacency).fit().transform([FIG1_W])
    b = GradualSemantics(WeightedFramework(fig1, FIG1_W)).fit().transform([FIG1_W])
    assert np.array_equal(a, b)


def test_scale(fig1):
    t = GradualSemantics(fig1).fit().scale([[0.5, 0.5, 1, 0.5]])
    assert t[0] == pytest.approx(0.463325, abs=5e-7)


def test_validation(fig1):
    est = GradualSemantics(fig1)
    with pytest.raises(NotFittedError):
        est.transform([FIG1_W])
    est.fit()
    with pytest.raises(ValueError):
        est.transform([[0.1, 0.2]])
    with pytest.raises(ValueError):
        est.transform([[0.1, 0.2, 0.3, 1.2]])
    with pytest.raises(ValueError):
        GradualSemantics(fig1, semantics="zz").fit()
    with pytest.raises(ValueError):
        GradualSemantics().fit()


def test_non_convergence(fig1):
    est = GradualSemantics(fig1, max_iter=4).fit()
    with pytest.raises(NotConvergedError):
        est.transform([FIG1_W])


def test_module_doctest():
    import doctest

    import lpgradual.estimator

    assert doctest.testmod(lpgradual.estimator).failed == 0
