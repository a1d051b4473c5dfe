"""Ordinary least squares with full diagnostics.

Estimation runs on the centered design via Householder QR, not normal
equations, so collinear predictors (VIF up to ~4 in the bundled data) stay
well conditioned. Summary statistics follow the usual package conventions:
RMSE is the residual standard error with n-k-1 degrees of freedom,
standardized residuals are internally studentized, and the Durbin-Watson
p-value comes from a seeded permutation bootstrap of the residuals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .base import BaseEstimator, check_array, check_X_y
from .dataset import Dataset
from .distributions import PValue, f_tail_p, t_two_tailed_p
from .errors import (
    DefinitionError,
    InsufficientDataError,
    SingularDesignError,
    ValidationError,
)

DEFAULT_P_ENTER = 0.05
DEFAULT_P_REMOVE = 0.10
DEFAULT_REPLICATES = 10_000
DEFAULT_SEED = 42

STD_RESIDUAL_FLAG = 3.0
COOKS_FLAG = 1.0


@dataclass(frozen=True)
class AnovaBlock:
    ss_regression: float
    df: int
    mean_square: float
    f: float
    p: PValue


@dataclass(frozen=True)
class LinearModelFit:
    response: str
    predictors: tuple[str, ...]
    coefficients: tuple[float, ...]
    standard_errors: tuple[float, ...]
    t_values: tuple[float, ...]
    p_values: tuple[PValue, ...]
    standardized_betas: tuple[float | None, ...]
    r: float
    r_squared: float
    adjusted_r_squared: float
    rmse: float
    anova: AnovaBlock | None
    residuals: tuple[float, ...]
    fitted: tuple[float, ...]
    leverage: tuple[float, ...]
    df_residual: int

    @property
    def n(self) -> int:
        return len(self.residuals)

    @property
    def intercept(self) -> float:
        return self.coefficients[0]

    def slope(self, predictor: str) -> float:
        return self.coefficients[1 + self.predictors.index(predictor)]


@dataclass(frozen=True)
class DurbinWatsonResult:
    d: float
    autocorrelation: float
    p: PValue


@dataclass(frozen=True)
class CollinearityReport:
    predictors: tuple[str, ...]
    tolerance: tuple[float, ...]
    vif: tuple[float, ...]


@dataclass(frozen=True)
class CasewiseDiagnostics:
    cooks_distance: tuple[float, ...]
    standardized_residuals: tuple[float, ...]
    flagged: tuple[int, ...]


@dataclass(frozen=True)
class StepwiseStep:
    action: str
    predictor: str | int
    p: float


def _householder_qr(a: np.ndarray) -> tuple[np.ndarray, list[np.ndarray | None]]:
    """In-place Householder triangularization; returns R and unit reflectors."""
    a = a.copy()
    n, k = a.shape
    reflectors: list[np.ndarray | None] = []
    for j in range(k):
        x = a[j:, j]
        norm_x = math.sqrt(float(x @ x))
        if norm_x == 0.0:
            reflectors.append(None)
            continue
        v = x.copy()
        v[0] += math.copysign(norm_x, v[0]) if v[0] != 0.0 else norm_x
        v_norm = math.sqrt(float(v @ v))
        if v_norm == 0.0:
            reflectors.append(None)
            continue
        v /= v_norm
        a[j:, j:] -= 2.0 * np.outer(v, v @ a[j:, j:])
        reflectors.append(v)
    return np.triu(a[:k, :k]), reflectors


def _apply_q_transpose(reflectors: list[np.ndarray | None], b: np.ndarray) -> np.ndarray:
    b = b.copy()
    for j, v in enumerate(reflectors):
        if v is None:
            continue
        b[j:] -= 2.0 * v * float(v @ b[j:])
    return b


def _thin_q(reflectors: list[np.ndarray | None], n: int, k: int) -> np.ndarray:
    q = np.zeros((n, k))
    for col in range(k):
        e = np.zeros(n)
        e[col] = 1.0
        for j in range(len(reflectors) - 1, -1, -1):
            v = reflectors[j]
            if v is None:
                continue
            e[j:] -= 2.0 * v * float(v @ e[j:])
        q[:, col] = e
    return q


def _back_solve(r: np.ndarray, b: np.ndarray) -> np.ndarray:
    k = b.shape[0]
    x = np.zeros(k)
    for i in range(k - 1, -1, -1):
        x[i] = (b[i] - float(r[i, i + 1:] @ x[i + 1:])) / r[i, i]
    return x


def _t_statistic(coef: float, se: float) -> float:
    if se == 0.0:
        if coef == 0.0:
            return 0.0
        return math.copysign(math.inf, coef)
    return coef / se


def _ols_arrays(x: np.ndarray, y: np.ndarray, predictor_names: Sequence[str]) -> dict:
    """Least-squares core; x may have zero columns for the intercept-only model."""
    n, k = x.shape
    if n < k + 2:
        raise InsufficientDataError(
            f"need at least {k + 2} rows to fit {k} predictors with an intercept, got {n}"
        )
    y_mean = float(np.mean(y))
    yc = y - y_mean
    sst = float(yc @ yc)
    df_residual = n - k - 1

    if k == 0:
        slopes = np.zeros(0)
        leverage = np.full(n, 1.0 / n)
        s_inv = np.zeros((0, 0))
        x_means = np.zeros(0)
    else:
        x_means = x.mean(axis=0)
        xc = x - x_means
        col_norms = np.sqrt((xc * xc).sum(axis=0))
        r_mat, reflectors = _householder_qr(xc)
        tol = n * np.finfo(float).eps * max(float(col_norms.max()), 1.0)
        for j in range(k):
            if abs(float(r_mat[j, j])) <= tol:
                raise SingularDesignError(
                    f"design is rank deficient: column {predictor_names[j]!r} is "
                    "linearly dependent on the preceding columns (or constant)"
                )
        qty = _apply_q_transpose(reflectors, yc)[:k]
        slopes = _back_solve(r_mat, qty)
        r_inv = np.column_stack(
            [_back_solve(r_mat, np.eye(k)[:, j]) for j in range(k)]
        )
        s_inv = r_inv @ r_inv.T
        q_thin = _thin_q(reflectors, n, k)
        leverage = 1.0 / n + (q_thin * q_thin).sum(axis=1)

    intercept = y_mean - float(x_means @ slopes)
    fitted = intercept + x @ slopes
    residuals = y - fitted
    ss_res = float(residuals @ residuals)
    rmse = math.sqrt(ss_res / df_residual) if df_residual > 0 else 0.0

    if sst > 0.0:
        r_squared = max(0.0, 1.0 - ss_res / sst)
    else:
        r_squared = 0.0
    if k == 0:
        r_squared = 0.0
    adjusted = 1.0 - (1.0 - r_squared) * (n - 1) / df_residual

    se_intercept = rmse * math.sqrt(1.0 / n + float(x_means @ s_inv @ x_means))
    se_slopes = rmse * np.sqrt(np.diag(s_inv)) if k else np.zeros(0)

    coefficients = [intercept, *slopes.tolist()]
    standard_errors = [se_intercept, *se_slopes.tolist()]
    t_values = [_t_statistic(c, s) for c, s in zip(coefficients, standard_errors)]
    p_values = [t_two_tailed_p(t, df_residual) for t in t_values]

    s_y = math.sqrt(sst / (n - 1)) if n > 1 else 0.0
    betas: list[float | None] = [None]
    for j in range(k):
        s_xj = float(np.std(x[:, j], ddof=1))
        betas.append(float(slopes[j]) * s_xj / s_y if s_y > 0.0 else 0.0)

    if k > 0:
        ss_reg = sst - ss_res
        ms_reg = ss_reg / k
        ms_res = ss_res / df_residual
        if ms_res == 0.0:
            f_stat = math.inf
            f_p = PValue(0.0)
        else:
            f_stat = ms_reg / ms_res
            f_p = f_tail_p(max(0.0, f_stat), k, df_residual)
        anova = AnovaBlock(ss_regression=ss_reg, df=k, mean_square=ms_reg,
                           f=f_stat, p=f_p)
    else:
        anova = None

    return {
        "coefficients": tuple(coefficients),
        "standard_errors": tuple(standard_errors),
        "t_values": tuple(t_values),
        "p_values": tuple(p_values),
        "standardized_betas": tuple(betas),
        "r": math.sqrt(r_squared),
        "r_squared": r_squared,
        "adjusted_r_squared": adjusted,
        "rmse": rmse,
        "anova": anova,
        "residuals": tuple(residuals.tolist()),
        "fitted": tuple(fitted.tolist()),
        "leverage": tuple(leverage.tolist()),
        "df_residual": df_residual,
    }


class OLS(BaseEstimator):
    """Least-squares linear regression with an intercept.

    Follows the fit/predict estimator convention: `fit(X, y)` stores the
    results as trailing-underscore attributes and returns self.
    """

    def fit(self, X, y) -> "OLS":
        X, y = check_X_y(X, y)
        names = tuple(f"x{j}" for j in range(X.shape[1]))
        stats = _ols_arrays(X, y, names)
        self.n_features_in_ = X.shape[1]
        self.intercept_ = stats["coefficients"][0]
        self.coef_ = np.array(stats["coefficients"][1:])
        self.stats_ = LinearModelFit(response="y", predictors=names, **stats)
        return self

    def predict(self, X) -> np.ndarray:
        self._check_fitted("stats_")
        X = check_array(X, name="X")
        if X.shape[1] != self.n_features_in_:
            raise ValidationError(
                f"X has {X.shape[1]} columns, expected {self.n_features_in_}"
            )
        return self.intercept_ + X @ self.coef_


class StepwiseOLS(BaseEstimator):
    """Forward-entry, backward-removal stepwise least squares.

    At each round the candidate whose coefficient would have the smallest
    p-value enters if that p < p_enter; included predictors with p > p_remove
    are then dropped, worst first, until the model is stable.
    """

    def __init__(self, p_enter: float = DEFAULT_P_ENTER,
                 p_remove: float = DEFAULT_P_REMOVE):
        self.p_enter = p_enter
        self.p_remove = p_remove

    def _candidate_p(self, X, y, selected: list[int], candidate: int) -> float:
        cols = selected + [candidate]
        stats = _ols_arrays(X[:, cols], y, [f"x{j}" for j in cols])
        return stats["p_values"][-1].value

    def fit(self, X, y) -> "StepwiseOLS":
        if not self.p_enter < self.p_remove:
            raise ValidationError(
                f"p_enter ({self.p_enter}) must be below p_remove ({self.p_remove})"
            )
        X, y = check_X_y(X, y)
        k = X.shape[1]
        selected: list[int] = []
        trace: list[StepwiseStep] = []
        while True:
            changed = False
            remaining = [j for j in range(k) if j not in selected]
            best_j = -1
            best_p = math.inf
            for j in remaining:
                try:
                    p = self._candidate_p(X, y, selected, j)
                except SingularDesignError:
                    continue
                if p < best_p:
                    best_p, best_j = p, j
            if best_j >= 0 and best_p < self.p_enter:
                selected.append(best_j)
                trace.append(StepwiseStep("add", best_j, best_p))
                changed = True
            while selected:
                stats = _ols_arrays(X[:, selected], y, [f"x{j}" for j in selected])
                slope_ps = [pv.value for pv in stats["p_values"][1:]]
                worst = max(range(len(selected)), key=lambda i: slope_ps[i])
                if slope_ps[worst] > self.p_remove:
                    trace.append(StepwiseStep("remove", selected[worst], slope_ps[worst]))
                    del selected[worst]
                    changed = True
                else:
                    break
            if not changed:
                break
        self.selected_ = tuple(selected)
        self.trace_ = tuple(trace)
        self.model_ = OLS().fit(X[:, selected], y) if selected else None
        return self

    def predict(self, X) -> np.ndarray:
        self._check_fitted("selected_")
        X = check_array(X, name="X")
        if self.model_ is None:
            raise DefinitionError("no predictor entered the model; nothing to predict with")
        return self.model_.predict(X[:, list(self.selected_)])


def _dataset_arrays(dataset: Dataset, response: str,
                    predictors: Sequence[str]) -> tuple[np.ndarray, np.ndarray, str, tuple[str, ...]]:
    response_name = dataset.resolve_column(response)
    names = tuple(dataset.resolve_column(p) for p in predictors)
    if response_name in names:
        raise ValidationError(f"response {response_name!r} cannot be its own predictor")
    y = np.array(dataset.column(response_name).values)
    if names:
        x = np.column_stack([np.array(dataset.column(p).values) for p in names])
    else:
        x = np.zeros((len(y), 0))
    return x, y, response_name, names


def fit_ols(dataset: Dataset, response: str, predictors: Sequence[str]) -> LinearModelFit:
    """Least-squares fit of a dataset response on named predictor columns."""
    x, y, response_name, names = _dataset_arrays(dataset, response, predictors)
    stats = _ols_arrays(x, y, names)
    return LinearModelFit(response=response_name, predictors=names, **stats)


def null_model(dataset: Dataset, response: str) -> LinearModelFit:
    """Intercept-only fit: intercept = mean, RMSE = sample standard deviation."""
    x, y, response_name, _ = _dataset_arrays(dataset, response, ())
    stats = _ols_arrays(x, y, ())
    return LinearModelFit(response=response_name, predictors=(), **stats)


def anova(fit: LinearModelFit) -> AnovaBlock:
    """Regression sum of squares, df, mean square, F, and p for a fitted model."""
    if fit.anova is None:
        raise DefinitionError("ANOVA is undefined for the intercept-only model")
    return fit.anova


def _dw_statistic(residuals: np.ndarray) -> tuple[float, float]:
    diffs = np.diff(residuals)
    ss = float(residuals @ residuals)
    d = float(diffs @ diffs) / ss
    autocorrelation = float(residuals[1:] @ residuals[:-1]) / ss
    return d, autocorrelation


def durbin_watson(fit: LinearModelFit | Sequence[float],
                  replicates: int = DEFAULT_REPLICATES,
                  seed: int = DEFAULT_SEED) -> DurbinWatsonResult:
    """Durbin-Watson d with lag-1 autocorrelation and a permutation-bootstrap p.

    Accepts a fitted model or a raw residual sequence in row order. Each
    bootstrap replicate permutes the residuals with its own generator spawned
    from the master seed, so the estimate does not depend on how replicates
    are scheduled.
    """
    residuals = np.array(
        fit.residuals if isinstance(fit, LinearModelFit) else [float(v) for v in fit]
    )
    n = residuals.shape[0]
    if n < 3:
        raise InsufficientDataError(f"Durbin-Watson needs at least 3 residuals, got {n}")
    if replicates < 1:
        raise ValidationError(f"replicates must be at least 1, got {replicates}")
    if float(residuals @ residuals) == 0.0:
        raise ValidationError("Durbin-Watson is undefined for all-zero residuals")
    d, autocorrelation = _dw_statistic(residuals)

    at_or_above = 0
    at_or_below = 0
    for i in range(replicates):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(i,)))
        d_perm, _ = _dw_statistic(residuals[rng.permutation(n)])
        if d_perm >= d:
            at_or_above += 1
        if d_perm <= d:
            at_or_below += 1
    p = min(1.0, 2.0 * min(at_or_above, at_or_below) / replicates)
    return DurbinWatsonResult(d=d, autocorrelation=autocorrelation,
                              p=PValue(p, "two-tailed"))


def collinearity(dataset: Dataset, predictors: Sequence[str]) -> CollinearityReport:
    """Tolerance (1 - R^2 of each predictor on the rest) and VIF per predictor."""
    if len(predictors) < 2:
        raise ValidationError("collinearity needs at least 2 predictors")
    names = tuple(dataset.resolve_column(p) for p in predictors)
    x = np.column_stack([np.array(dataset.column(p).values) for p in names])
    tolerances: list[float] = []
    vifs: list[float] = []
    for j in range(len(names)):
        others = [c for c in range(len(names)) if c != j]
        try:
            stats = _ols_arrays(x[:, others], x[:, j], [names[c] for c in others])
            tol = 1.0 - stats["r_squared"]
        except SingularDesignError:
            tol = 0.0
        if tol <= 0.0:
            tolerances.append(0.0)
            vifs.append(math.inf)
        else:
            tolerances.append(tol)
            vifs.append(1.0 / tol)
    return CollinearityReport(predictors=names, tolerance=tuple(tolerances),
                              vif=tuple(vifs))


def casewise_diagnostics(fit: LinearModelFit) -> CasewiseDiagnostics:
    """Internally studentized residuals, Cook's distances, and flagged rows."""
    k = len(fit.predictors)
    std_resid: list[float] = []
    cooks: list[float] = []
    for e, h in zip(fit.residuals, fit.leverage):
        denom = fit.rmse * math.sqrt(max(0.0, 1.0 - h))
        r = e / denom if denom > 0.0 else 0.0
        std_resid.append(r)
        cooks.append(r * r * h / ((k + 1) * (1.0 - h)) if h < 1.0 else math.inf)
    flagged = tuple(
        i for i in range(fit.n)
        if abs(std_resid[i]) > STD_RESIDUAL_FLAG or cooks[i] > COOKS_FLAG
    )
    return CasewiseDiagnostics(cooks_distance=tuple(cooks),
                               standardized_residuals=tuple(std_resid),
                               flagged=flagged)


def stepwise_fit(dataset: Dataset, response: str, candidates: Sequence[str],
                 p_enter: float = DEFAULT_P_ENTER,
                 p_remove: float = DEFAULT_P_REMOVE) -> tuple[LinearModelFit, tuple[StepwiseStep, ...]]:
    """Stepwise selection over candidate columns; returns the final fit and trace."""
    if not candidates:
        raise ValidationError("stepwise selection needs at least one candidate")
    x, y, response_name, names = _dataset_arrays(dataset, response, candidates)
    est = StepwiseOLS(p_enter=p_enter, p_remove=p_remove).fit(x, y)
    trace = tuple(
        StepwiseStep(step.action, names[step.predictor], step.p) for step in est.trace_
    )
    selected_names = tuple(names[j] for j in est.selected_)
    stats = _ols_arrays(x[:, list(est.selected_)], y, selected_names)
    return (
        LinearModelFit(response=response_name, predictors=selected_names, **stats),
        trace,
    )


def predict(fit: LinearModelFit, x: Mapping[str, float]) -> float:
    """Evaluate the fitted linear model at the supplied predictor values."""
    unknown = sorted(set(x) - set(fit.predictors))
    if unknown:
        raise ValidationError(f"unknown predictors: {', '.join(unknown)}")
    missing = [p for p in fit.predictors if p not in x]
    if missing:
        raise ValidationError(f"missing predictor values: {', '.join(missing)}")
    value = fit.coefficients[0]
    for name, coef in zip(fit.predictors, fit.coefficients[1:]):
        value += coef * float(x[name])
    return value
