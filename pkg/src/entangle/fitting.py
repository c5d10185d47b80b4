"""Two-parameter least-squares scaling fits, y = a + b * g(n)."""

from dataclasses import asdict, dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted, check_X_y, check_array

from .errors import GridMismatch, SingularDesign

FIT_MODELS = {
    "a_plus_b_n": lambda n: n,
    "a_plus_b_n2": lambda n: n * n,
    "a_plus_b_sqrt_n": np.sqrt,
}


def regressor(xs, model):
    if model not in FIT_MODELS:
        raise ValueError(f"unknown fit model {model!r}; choose from {tuple(FIT_MODELS)}")
    return FIT_MODELS[model](np.asarray(xs, dtype=np.float64))


@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    stderr_a: float
    stderr_b: float
    r_squared: float
    model: str = "a_plus_b_n"
    n_points: int = 0

    def predict(self, xs):
        return self.a + self.b * regressor(xs, self.model)

    def to_dict(self):
        return asdict(self)

    def csv_row(self, series):
        vals = (self.a, self.stderr_a, self.b, self.stderr_b, self.r_squared)
        return ",".join([series, self.model] + [repr(float(v)) for v in vals])


FIT_CSV_HEADER = "series,model,a,stderr_a,b,stderr_b,r2"


def fit(xs, ys, model, weights=None):
    """Ordinary least squares of ``ys`` on [1, g(xs)].

    Coefficient standard errors use the unbiased residual variance. Passing
    ``weights`` (e.g. 1 / stderr**2) switches to weighted least squares.
    R^2 is 1 - SSres / SStot, defined as 1 when the data have no spread and
    the fit is exact.
    """
    xs = np.asarray(xs, dtype=np.float64).ravel()
    ys = np.asarray(ys, dtype=np.float64).ravel()
    if xs.shape != ys.shape:
        raise ValueError("xs and ys must have the same length")
    if len(xs) < 3:
        raise ValueError("need at least 3 points for a two-parameter fit")
    if len(np.unique(xs)) != len(xs):
        raise ValueError("xs must be distinct")
    g = regressor(xs, model)
    w = np.ones_like(ys) if weights is None else np.asarray(weights, dtype=np.float64).ravel()
    if w.shape != ys.shape or np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be positive and match ys")

    # centered closed form of the 2x2 normal equations
    wsum = w.sum()
    g_bar = np.dot(w, g) / wsum
    y_bar = np.dot(w, ys) / wsum
    gc = g - g_bar
    sxx = np.dot(w, gc * gc)
    if not sxx > 1e-300 or sxx <= 1e-24 * np.dot(w, g * g):
        raise SingularDesign("all regressor values are equal")
    b = np.dot(w, gc * (ys - y_bar)) / sxx
    a = y_bar - b * g_bar

    resid = ys - (a + b * g)
    ss_res = float(np.dot(w, resid * resid))
    ss_tot = float(np.dot(w, (ys - y_bar) ** 2))
    dof = len(xs) - 2
    sigma2 = ss_res / dof
    stderr_b = np.sqrt(sigma2 / sxx)
    stderr_a = np.sqrt(sigma2 * (1.0 / wsum + g_bar * g_bar / sxx))

    scale = max(float(np.dot(w, ys * ys)), 1e-300)
    if ss_tot <= 1e-28 * scale:
        r2 = 1.0 if ss_res <= 1e-28 * scale else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return FitResult(float(a), float(b), float(stderr_a), float(stderr_b), float(r2), model, len(xs))


@dataclass(frozen=True)
class ConjectureReport:
    """How closely sqrt(E[X^2]) tracks E[|X|] across lengths."""

    ns: tuple
    ratios: tuple
    ratio_constant: float
    q: float
    b_abs: float
    b_over_sqrt_q: float

    @property
    def half_normal_ratio(self):
        return float(np.sqrt(np.pi / 2.0))

    def to_dict(self):
        d = asdict(self)
        d["ns"] = list(self.ns)
        d["ratios"] = list(self.ratios)
        return d


def compare_conjecture(msq, mabs, msq_model="a_plus_b_n2", abs_model="a_plus_b_n"):
    """Compare a mean-squared table with a mean-absolute table on one grid.

    ``ratio_constant`` is the least-squares slope through the origin of
    sqrt(mean_squared) against mean_abs; it equals sqrt(pi/2) for half-normal
    data. ``b_over_sqrt_q`` compares the fitted growth rates.
    """
    ns_sq, ys_sq = _table_xy(msq)
    ns_abs, ys_abs = _table_xy(mabs)
    if ns_sq.shape != ns_abs.shape or not np.array_equal(ns_sq, ns_abs):
        raise GridMismatch("tables use different length grids")
    root = np.sqrt(ys_sq)
    ratios = root / ys_abs
    constant = float(np.dot(root, ys_abs) / np.dot(ys_abs, ys_abs))
    if len(ns_sq) >= 3:
        q = fit(ns_sq, ys_sq, msq_model).b
        b_abs = fit(ns_abs, ys_abs, abs_model).b
        ratio_b = b_abs / np.sqrt(q) if q > 0 else float("nan")
    else:
        q = b_abs = ratio_b = float("nan")
    return ConjectureReport(
        tuple(int(n) for n in ns_sq),
        tuple(float(r) for r in ratios),
        constant,
        float(q),
        float(b_abs),
        float(ratio_b),
    )


def _table_xy(table):
    if hasattr(table, "ns") and hasattr(table, "means"):
        return np.asarray(table.ns, dtype=np.float64), np.asarray(table.means, dtype=np.float64)
    xs, ys = table
    return np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64)


class ScalingLawRegressor(RegressorMixin, BaseEstimator):
    """scikit-learn wrapper around :func:`fit`.

    ``X`` is a single column of chain lengths. ``sample_weight`` in ``fit``
    enables weighted least squares.
    """

    def __init__(self, model="a_plus_b_n"):
        self.model = model

    def fit(self, X, y, sample_weight=None):
        X, y = check_X_y(X, y, y_numeric=True)
        if X.shape[1] != 1:
            raise ValueError("ScalingLawRegressor expects a single feature (n)")
        self.result_ = fit(X[:, 0], y, self.model, weights=sample_weight)
        self.intercept_ = self.result_.a
        self.coef_ = np.array([self.result_.b])
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "result_")
        X = check_array(X)
        return self.result_.predict(X[:, 0])
