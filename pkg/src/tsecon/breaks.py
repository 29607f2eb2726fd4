"""Structural-break tests on autoregressions: Chow at a known date, QLR.

The Chow test augments an AR(p) with a break dummy D_t(tau) = 1{t <= tau}
and its interactions with every lag, then F-tests the p + 1 dummy
coefficients.  The QLR statistic is the maximum Chow F over all candidate
dates inside a trimmed window; its null distribution is nonstandard and
comes from the Monte Carlo critical-value cache.
"""

from __future__ import annotations

import numpy as np
from scipy import stats as _stats

from .cvcache import default_cache
from .errors import DomainError
from .ols import (
    BreakDummy,
    BreakLagInteraction,
    DesignSpec,
    Intercept,
    Lag,
    Level,
    f_statistic,
    fit_design,
)
from .report import DEFAULT_LEVELS, TestReport, make_test_report
from .series import TimeSeries

__all__ = ["chow_test", "qlr_test", "qlr_window", "chow_f_scan"]


def chow_test(series: TimeSeries, p: int, tau: int, levels=DEFAULT_LEVELS) -> TestReport:
    """F-test for a coefficient break at known position tau (0-based).

    Every observation with position <= tau belongs to the first regime.
    Both regimes must contribute at least p + 2 effective observations.
    """
    if not isinstance(p, (int, np.integer)) or p < 1:
        raise DomainError("autoregressive order must be a positive integer")
    T = len(series)
    n = T - p
    m1 = tau - p + 1
    m2 = n - m1
    if m1 < p + 2 or m2 < p + 2:
        raise DomainError(
            f"break at position {tau} leaves regimes of {max(m1, 0)} and {max(m2, 0)} "
            f"observations; both need at least {p + 2}"
        )
    name = series.label or "y"
    data = {name: series}
    base = [Intercept()] + [Lag(name, j) for j in range(1, p + 1)]
    extra = [BreakDummy(tau)] + [BreakLagInteraction(tau, name, j) for j in range(1, p + 1)]
    restricted, _ = fit_design(DesignSpec(Level(name), base), data)
    unrestricted, _ = fit_design(DesignSpec(Level(name), base + extra), data)
    ftest = f_statistic(restricted, unrestricted, q=p + 1)
    cvs = {
        float(lv): float(_stats.f.ppf(1.0 - lv, ftest.df_num, ftest.df_den)) for lv in levels
    }
    return make_test_report(
        name="chow",
        statistic=ftest.statistic,
        family={"family": "F", "df_num": ftest.df_num, "df_den": ftest.df_den},
        tail="right",
        critical_values=cvs,
        cv_provenance={"kind": "f_distribution"},
        nuisance={
            "break_position": int(tau),
            "break_date": int(series.origin + tau),
            "regime_sizes": [int(m1), int(m2)],
            "p": int(p),
            "series": series.label,
        },
    )


def qlr_window(T: int, p: int, trim: float) -> np.ndarray:
    """Candidate break positions: trimmed range intersected with feasibility."""
    if not (0.0 < trim < 0.5):
        raise DomainError("trim must lie strictly between 0 and 0.5")
    lo = max(int(np.ceil(trim * T)), 2 * p + 1)
    hi = min(int(np.floor((1.0 - trim) * T)), T - p - 3)
    if hi < lo:
        raise DomainError(f"no feasible break candidates for T = {T}, p = {p}, trim = {trim}")
    return np.arange(lo, hi + 1)


def chow_f_scan(paths: np.ndarray, p: int, taus: np.ndarray) -> np.ndarray:
    """Chow F statistics for every candidate date, batched over sample paths.

    paths has shape (R, T).  The unrestricted SSR at a split equals the sum
    of the two single-regime SSRs (the dummy block makes the regimes
    independent), so each candidate needs only prefix and suffix
    cross-product matrices, accumulated once.
    """
    Y = np.atleast_2d(np.asarray(paths, dtype=float))
    R, T = Y.shape
    n = T - p
    k = p + 1
    taus = np.asarray(taus)
    y = Y[:, p:].copy()
    X = np.empty((R, n, k))
    X[:, :, 0] = 1.0
    for i in range(1, p + 1):
        X[:, :, i] = Y[:, p - i : T - i]
    # regimes carry their own intercepts, so centering changes no SSR but
    # keeps the normal-equation cumulants well conditioned
    y -= y.mean(axis=1, keepdims=True)
    X[:, :, 1:] -= X[:, :, 1:].mean(axis=1, keepdims=True)

    P = np.cumsum(np.einsum("rti,rtj->rtij", X, X), axis=1)
    q = np.cumsum(np.einsum("rti,rt->rti", X, y), axis=1)
    s = np.cumsum(y**2, axis=1)

    def ssr(G, h, sq):
        beta = np.linalg.solve(G, h[..., None])[..., 0]
        return np.maximum(sq - np.einsum("...i,...i->...", h, beta), 0.0)

    m1 = taus - p + 1  # regime-1 row counts
    G1, h1, s1 = P[:, m1 - 1], q[:, m1 - 1], s[:, m1 - 1]
    Gt, ht, st = P[:, -1], q[:, -1], s[:, -1]
    G2, h2, s2 = Gt[:, None] - G1, ht[:, None] - h1, st[:, None] - s1

    ssr_full = ssr(Gt, ht, st)[:, None]
    ssr_split = ssr(G1, h1, s1) + ssr(G2, h2, s2)
    df_den = n - 2 * k
    if df_den < 1:
        raise DomainError("no residual degrees of freedom in the split regressions")
    with np.errstate(divide="ignore", invalid="ignore"):
        F = (np.maximum(ssr_full - ssr_split, 0.0) / k) / (ssr_split / df_den)
    return F


def qlr_test(
    series: TimeSeries,
    p: int,
    trim: float = 0.15,
    levels=DEFAULT_LEVELS,
    cv_source=None,
) -> TestReport:
    """Sup-F break test over an interior window of candidate dates."""
    if not isinstance(p, (int, np.integer)) or p < 1:
        raise DomainError("autoregressive order must be a positive integer")
    T = len(series)
    taus = qlr_window(T, p, trim)
    try:
        F = chow_f_scan(series.values[None, :], p, taus)[0]
    except np.linalg.LinAlgError:
        raise DomainError("collinear regressors inside the break scan") from None
    if not np.all(np.isfinite(F)):
        raise DomainError("degenerate residual variance inside the break scan")
    best = int(np.argmax(F))
    stat = float(F[best])
    tau_star = int(taus[best])
    cache = default_cache(cv_source)
    cvs, provenance, tail = cache.critical_values(
        "qlr", {"p": int(p), "trim": f"{trim:g}"}, levels
    )
    if tail != "right":
        raise DomainError("cached QLR entry has the wrong tail direction")
    n = T - p
    return make_test_report(
        name="qlr",
        statistic=stat,
        family={
            "family": "sup_F",
            "df_num": p + 1,
            "df_den": n - 2 * (p + 1),
            "trim": float(trim),
        },
        tail="right",
        critical_values=cvs,
        cv_provenance=provenance,
        nuisance={
            "break_position": tau_star,
            "break_date": int(series.origin + tau_star),
            "window": [int(taus[0]), int(taus[-1])],
            "n_candidates": int(taus.size),
            "p": int(p),
            "series": series.label,
        },
    )
