import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entangle.errors import GridMismatch, SingularDesign
from entangle.fitting import ScalingLawRegressor, compare_conjecture, fit, regressor

NS = np.arange(10, 61, 10)


def test_exact_recovery():
    for model, g in (("a_plus_b_n2", NS**2), ("a_plus_b_n", NS), ("a_plus_b_sqrt_n", np.sqrt(NS))):
        r = fit(NS, 3 + 2 * g, model)
        assert r.a == pytest.approx(3, abs=1e-9)
        assert r.b == pytest.approx(2, abs=1e-9)
        assert r.r_squared == pytest.approx(1, abs=1e-9)
        assert r.stderr_b == pytest.approx(0, abs=1e-9)


def test_constant_data():
    r = fit(NS, np.full(len(NS), 4.0), "a_plus_b_n")
    assert r.b == pytest.approx(0, abs=1e-12)
    assert r.a == pytest.approx(4, abs=1e-12)
    assert r.r_squared == 1.0


def test_matches_numpy_lstsq(rng):
    ys = 0.03 * NS**2 + rng.normal(0, 2, len(NS))
    r = fit(NS, ys, "a_plus_b_n2")
    X = np.column_stack([np.ones(len(NS)), NS**2.0])
    (a, b), *_ = np.linalg.lstsq(X, ys, rcond=None)
    assert (r.a, r.b) == pytest.approx((a, b), rel=1e-9)
    resid = ys - X @ (a, b)
    cov = resid @ resid / (len(NS) - 2) * np.linalg.inv(X.T @ X)
    assert (r.stderr_a, r.stderr_b) == pytest.approx(tuple(np.sqrt(np.diag(cov))), rel=1e-7)
    ss_tot = np.sum((ys - ys.mean()) ** 2)
    assert r.r_squared == pytest.approx(1 - resid @ resid / ss_tot, rel=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 10), st.floats(-5, 5), st.lists(st.floats(-1, 1), min_size=6, max_size=6))
def test_affine_equivariance(scale, shift, noise):
    ys = 1 + 0.5 * NS + np.array(noise)
    r = fit(NS, ys, "a_plus_b_n")
    t = fit(NS, scale * ys + shift, "a_plus_b_n")
    assert t.b == pytest.approx(scale * r.b, rel=1e-7, abs=1e-9)
    assert t.a == pytest.approx(scale * r.a + shift, rel=1e-7, abs=1e-7)


def test_weighted_fit_on_exact_data():
    r = fit(NS, 1 + 2 * NS, "a_plus_b_n", weights=np.arange(1, 7))
    assert (r.a, r.b) == pytest.approx((1, 2))


def test_errors():
    with pytest.raises(ValueError):
        fit([1, 2], [1, 2], "a_plus_b_n")
    with pytest.raises(ValueError):
        fit(NS, NS, "exponential")
    with pytest.raises(ValueError):
        fit([1, 1, 2], [1, 2, 3], "a_plus_b_n")
    with pytest.raises(SingularDesign):
        fit([1e-200, 2e-200, 3e-200], [1, 2, 3], "a_plus_b_n2")


def test_half_normal_ratio():
    sigma = np.sqrt(0.03) * NS
    report = compare_conjecture((NS, sigma**2), (NS, sigma * np.sqrt(2 / np.pi)))
    assert report.ratio_constant == pytest.approx(np.sqrt(np.pi / 2), abs=1e-9)
    assert np.allclose(report.ratios, np.sqrt(np.pi / 2), atol=1e-9)
    with pytest.raises(GridMismatch):
        compare_conjecture((NS, sigma**2), (NS[:-1], sigma[:-1]))


def test_sklearn_regressor():
    X = NS.reshape(-1, 1)
    est = ScalingLawRegressor("a_plus_b_sqrt_n").fit(X, 2 + 0.4 * np.sqrt(NS))
    assert est.coef_[0] == pytest.approx(0.4)
    assert est.intercept_ == pytest.approx(2)
    np.testing.assert_allclose(est.predict([[100]]), [6.0])
    assert est.score(X, 2 + 0.4 * np.sqrt(NS)) == pytest.approx(1.0)
    assert est.get_params() == {"model": "a_plus_b_sqrt_n"}
    np.testing.assert_allclose(regressor([4, 9], "a_plus_b_sqrt_n"), [2, 3])
