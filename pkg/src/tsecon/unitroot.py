"""Dickey-Fuller style unit-root testing.

The test regression is

    dY_t = b0 [+ a t] + delta Y_{t-1} + sum_{i=1..p} g_i dY_{t-i} + u_t

and the statistic is the t-ratio on delta, judged against left-tail
critical values simulated under the random-walk null (the distribution is
not a t distribution).  ``deterministic`` picks drift only or drift plus
linear trend; augmentation lags default to BIC selection.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .cvcache import default_cache
from .errors import DomainError
from .ols import DesignSpec, Diff, DiffLag, Intercept, Lag, OlsFit, Trend, build_design, solve_ols
from .report import DEFAULT_LEVELS, TestReport, make_test_report
from .series import TimeSeries

__all__ = ["AdfSpec", "adf_test", "default_adf_pmax"]

_DETERMINISTICS = ("drift", "trend", "none")  # "none" is internal (residual tests)


def default_adf_pmax(n_obs: int) -> int:
    """Default cap for BIC lag selection: floor(4 * (n/100)^(1/4))."""
    if n_obs < 1:
        return 0
    return int(np.floor(4.0 * (n_obs / 100.0) ** 0.25))


def resolve_adf_pmax(n_obs: int) -> int:
    """Default cap clipped so the common selection sample stays workable."""
    return min(default_adf_pmax(n_obs), max(0, (n_obs - 8) // 3))


@dataclass(frozen=True)
class AdfSpec:
    """Unit-root regression layout: augmentation lags and deterministic terms.

    lags may be a nonnegative integer or "auto" for BIC selection over
    0..default_adf_pmax(T).
    """

    lags: int | str = "auto"
    deterministic: str = "drift"

    def __post_init__(self):
        if self.deterministic not in ("drift", "trend"):
            raise DomainError("deterministic must be 'drift' or 'trend'")
        if isinstance(self.lags, str):
            if self.lags != "auto":
                raise DomainError("lags must be a nonnegative integer or 'auto'")
        elif not isinstance(self.lags, (int, np.integer)) or self.lags < 0:
            raise DomainError("lags must be a nonnegative integer or 'auto'")

    @property
    def lag_token(self) -> str:
        return "auto" if self.lags == "auto" else str(int(self.lags))


def _adf_design(values: np.ndarray, deterministic: str, lags: int):
    name = "y"
    terms = []
    if deterministic in ("drift", "trend"):
        terms.append(Intercept())
    if deterministic == "trend":
        terms.append(Trend())
    terms.append(Lag(name, 1))
    terms += [DiffLag(name, j) for j in range(1, lags + 1)]
    spec = DesignSpec(Diff(name), terms)
    return build_design(spec, {name: TimeSeries(values, label=name)})


def _adf_fit(values: np.ndarray, deterministic: str, lags: int, drop_head: int = 0) -> OlsFit:
    design = _adf_design(values, deterministic, lags)
    X, y = design.matrix, design.response
    if drop_head:
        X, y = X[drop_head:], y[drop_head:]
    return solve_ols(X, y, design.column_names)


def select_adf_lags(values: np.ndarray, deterministic: str, p_max: int) -> int:
    """BIC over 0..p_max, all candidates on the common sample of p_max.

    The criterion is ln(SSR/n) + k ln(n)/n with k the full parameter count
    of the candidate regression.  Ties go to fewer lags.
    """
    if deterministic not in _DETERMINISTICS:
        raise DomainError(f"deterministic must be one of {_DETERMINISTICS}")
    T = values.size
    n_common = T - 1 - p_max
    k_det = {"drift": 2, "trend": 3, "none": 1}[deterministic]
    if n_common < p_max + k_det + 1:
        raise DomainError(f"p_max = {p_max} leaves too few observations for lag selection")
    best_lag, best_value = 0, np.inf
    logn = np.log(n_common)
    for ell in range(p_max + 1):
        fit = _adf_fit(values, deterministic, ell, drop_head=p_max - ell)
        k = ell + k_det
        value = np.log(fit.ssr / n_common) + k * logn / n_common
        if value < best_value:
            best_lag, best_value = ell, float(value)
    return best_lag


def adf_statistic(values: np.ndarray, deterministic: str, lags: int | str):
    """Resolve lags, run the regression, return (t-ratio, fit, lags used)."""
    if lags == "auto":
        p_max = resolve_adf_pmax(values.size)
        lags_used = select_adf_lags(values, deterministic, p_max)
    else:
        lags_used = int(lags)
    fit = _adf_fit(values, deterministic, lags_used)
    stat = fit.t_stat("y.l1")
    return stat, fit, lags_used


def adf_test(
    series: TimeSeries,
    spec: AdfSpec | None = None,
    levels=DEFAULT_LEVELS,
    cv_source=None,
) -> TestReport:
    """Unit-root test; rejection favors stationarity around the deterministic part."""
    spec = spec or AdfSpec()
    T = len(series)
    fixed = 0 if spec.lags == "auto" else int(spec.lags)
    if T - 1 - fixed < 20:
        raise DomainError("ADF needs an effective sample of at least 20 observations")
    stat, fit, lags_used = adf_statistic(series.values, spec.deterministic, spec.lags)
    if fit.n_obs < 50:
        warnings.warn(
            f"ADF effective sample is only {fit.n_obs}; critical values may be unreliable",
            UserWarning,
            stacklevel=2,
        )
    cache = default_cache(cv_source)
    cvs, provenance, tail = cache.critical_values(
        "adf", {"deterministic": spec.deterministic, "lags": spec.lag_token}, levels
    )
    if tail != "left":
        raise DomainError("cached ADF entry has the wrong tail direction")
    return make_test_report(
        name="adf",
        statistic=stat,
        family={
            "family": "dickey_fuller",
            "deterministic": spec.deterministic,
            "augmentation_lags": lags_used,
        },
        tail="left",
        critical_values=cvs,
        cv_provenance=provenance,
        nuisance={
            "delta_hat": fit.coefficient("y.l1"),
            "delta_se": float(fit.stderrs[fit.column_names.index("y.l1")]),
            "lags": spec.lag_token,
            "lags_used": int(lags_used),
            "n_obs": int(fit.n_obs),
            "series": series.label,
        },
    )
