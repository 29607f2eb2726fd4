"""Monte Carlo engine: null-distribution critical values and size/power studies.

Critical values come from simulating a statistic's null data-generating
process many times and reading empirical quantiles off the sorted draws.
Each replication gets its own generator stream derived from (seed, index),
so results are identical no matter how replications are batched across
workers; sorting before quantile extraction removes the remaining order
dependence.

Three statistic kinds are registered:

  adf    params {"deterministic": drift|trend|none, "lags": int or "auto"}
         null: driftless standard Gaussian random walk
  qlr    params {"p": int, "trim": float}
         null: Gaussian white noise through the AR(p) break scan
  egadf  params {"n_regressors": 1..4}
         null: independent driftless Gaussian random walks

The batched evaluators reproduce the public test-statistic paths (same
regressions, same lag-selection rule); equivalence is covered by tests.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from .breaks import chow_f_scan, chow_test, qlr_test, qlr_window
from .cointegration import eg_adf_test
from .cvcache import CvEntry
from .dgp import GENERATOR_NAME, RandomWalk, WhiteNoise, rng_for, sample_values, simulate
from .errors import DomainError
from .report import DEFAULT_LEVELS
from .series import TimeSeries
from .unitroot import AdfSpec, adf_test, resolve_adf_pmax
from .varmodel import granger_test

__all__ = ["McRun", "mc_critical_values", "SizePower", "size_power_suite"]

_K_DET = {"none": 1, "drift": 2, "trend": 3}


# --- batched statistic evaluation --------------------------------------------


def _adf_block_design(paths: np.ndarray, deterministic: str, lags: int, drop_head: int = 0):
    """Batched ADF regression arrays over rows t = lags + 1 + drop_head .. T-1."""
    R, T = paths.shape
    t0 = lags + 1 + drop_head
    rows = T - t0
    if rows < _K_DET[deterministic] + lags + 1:
        raise DomainError("sample too short for the augmentation window")
    dy = paths[:, 1:] - paths[:, :-1]  # dy[:, t-1] = y_t - y_{t-1}
    y = dy[:, t0 - 1 :]
    cols = []
    if deterministic in ("drift", "trend"):
        cols.append(np.ones((R, rows)))
    if deterministic == "trend":
        cols.append(np.broadcast_to(np.arange(t0, T, dtype=float), (R, rows)))
    cols.append(paths[:, t0 - 1 : T - 1])
    for j in range(1, lags + 1):
        cols.append(dy[:, t0 - 1 - j : T - 1 - j])
    return np.stack(cols, axis=2), y


def _batched_tstat(X: np.ndarray, y: np.ndarray, idx: int) -> np.ndarray:
    """t-ratio of coefficient `idx` from batched least squares."""
    G = np.einsum("rti,rtj->rij", X, X)
    h = np.einsum("rti,rt->ri", X, y)
    beta = np.linalg.solve(G, h[..., None])[..., 0]
    resid = y - np.einsum("rti,ri->rt", X, beta)
    ssr = np.einsum("rt,rt->r", resid, resid)
    n, k = X.shape[1], X.shape[2]
    sigma2 = ssr / (n - k)
    inv = np.linalg.inv(G)
    return beta[:, idx] / np.sqrt(sigma2 * inv[:, idx, idx])


def _batched_adf_stat(paths: np.ndarray, deterministic: str, lags) -> np.ndarray:
    """Mirror of adf_statistic over a block of sample paths.

    The auto rule selects lags by BIC over 0..p_max on the common sample
    (all candidates as nested leading-column subsets of one design), then
    refits the chosen order on its full sample.
    """
    k_det = _K_DET[deterministic]
    if lags != "auto":
        X, y = _adf_block_design(paths, deterministic, int(lags))
        return _batched_tstat(X, y, k_det - 1)
    R, T = paths.shape
    p_max = resolve_adf_pmax(T)
    X, y = _adf_block_design(paths, deterministic, p_max)
    n = X.shape[1]
    G = np.einsum("rti,rtj->rij", X, X)
    h = np.einsum("rti,rt->ri", X, y)
    yy = np.einsum("rt,rt->r", y, y)
    bic = np.empty((R, p_max + 1))
    for ell in range(p_max + 1):
        kq = k_det + ell
        beta = np.linalg.solve(G[:, :kq, :kq], h[:, :kq, None])[..., 0]
        ssr = np.maximum(yy - np.einsum("ri,ri->r", h[:, :kq], beta), 1e-300)
        bic[:, ell] = np.log(ssr / n) + kq * np.log(n) / n
    chosen = np.argmin(bic, axis=1)  # first minimum = fewest lags on ties
    stats = np.empty(R)
    for ell in np.unique(chosen):
        mask = chosen == ell
        Xe, ye = _adf_block_design(paths[mask], deterministic, int(ell))
        stats[mask] = _batched_tstat(Xe, ye, k_det - 1)
    return stats


def _adf_chunk(parsed, T: int, seed: int, start: int, stop: int) -> np.ndarray:
    deterministic, lags = parsed
    template = RandomWalk()
    paths = np.empty((stop - start, T))
    for i in range(stop - start):
        paths[i] = sample_values(template, T, rng_for(seed, start + i))
    return _batched_adf_stat(paths, deterministic, lags)


def _qlr_chunk(parsed, T: int, seed: int, start: int, stop: int) -> np.ndarray:
    p, trim = parsed
    template = WhiteNoise()
    paths = np.empty((stop - start, T))
    for i in range(stop - start):
        paths[i] = sample_values(template, T, rng_for(seed, start + i))
    taus = qlr_window(T, p, trim)
    return chow_f_scan(paths, p, taus).max(axis=1)


def _egadf_chunk(parsed, T: int, seed: int, start: int, stop: int) -> np.ndarray:
    m = parsed
    template = RandomWalk()
    R = stop - start
    paths = np.empty((R, T, m + 1))
    for i in range(R):
        rng = rng_for(seed, start + i)
        for c in range(m + 1):  # column 0 is the regressand
            paths[i, :, c] = sample_values(template, T, rng)
    y = paths[:, :, 0]
    X = np.concatenate([np.ones((R, T, 1)), paths[:, :, 1:]], axis=2)
    G = np.einsum("rti,rtj->rij", X, X)
    h = np.einsum("rti,rt->ri", X, y)
    beta = np.linalg.solve(G, h[..., None])[..., 0]
    residuals = y - np.einsum("rti,ri->rt", X, beta)
    return _batched_adf_stat(residuals, "none", "auto")


def _parse_params(statistic: str, params: Mapping):
    """Validate params, returning (canonical params, parsed args, tail, null description)."""
    params = dict(params or {})
    if statistic == "adf":
        deterministic = params.pop("deterministic", "drift")
        lags = params.pop("lags", "auto")
        if params:
            raise DomainError(f"unknown adf parameters: {sorted(params)}")
        if deterministic not in _K_DET:
            raise DomainError(f"deterministic must be one of {sorted(_K_DET)}")
        if lags != "auto":
            lags = int(lags)
            if lags < 0:
                raise DomainError("lags must be nonnegative or 'auto'")
        canon = {"deterministic": deterministic, "lags": lags}
        return canon, (deterministic, lags), "left", "driftless standard Gaussian random walk"
    if statistic == "qlr":
        try:
            p = int(params.pop("p"))
            trim = float(params.pop("trim", 0.15))
        except KeyError as missing:
            raise DomainError(f"qlr requires parameter {missing}") from None
        if params:
            raise DomainError(f"unknown qlr parameters: {sorted(params)}")
        if p < 1:
            raise DomainError("p must be a positive integer")
        if not 0.0 < trim < 0.5:
            raise DomainError("trim must lie strictly between 0 and 0.5")
        canon = {"p": p, "trim": f"{trim:g}"}
        return canon, (p, trim), "right", "Gaussian white noise"
    if statistic == "egadf":
        try:
            m = int(params.pop("n_regressors"))
        except KeyError as missing:
            raise DomainError(f"egadf requires parameter {missing}") from None
        if params:
            raise DomainError(f"unknown egadf parameters: {sorted(params)}")
        if m < 1:
            raise DomainError("n_regressors must be a positive integer")
        canon = {"n_regressors": m}
        return canon, m, "left", "independent driftless Gaussian random walks"
    raise DomainError(
        f"unknown statistic kind {statistic!r}; choose from adf, qlr, egadf"
    )


_CHUNK_RUNNERS = {"adf": _adf_chunk, "qlr": _qlr_chunk, "egadf": _egadf_chunk}


def _chunk_stats(statistic: str, parsed, T_sim: int, seed: int, start: int, stop: int):
    return _CHUNK_RUNNERS[statistic](parsed, T_sim, seed, start, stop)


# --- critical values ----------------------------------------------------------


@dataclass(frozen=True)
class McRun:
    """Empirical null quantiles of a simulated statistic."""

    statistic: str
    params: dict
    tail: str
    T_sim: int
    reps: int
    seed: int
    levels: tuple
    quantiles: dict
    summary: dict
    null_dgp: str
    generator: str = GENERATOR_NAME

    def to_entry(self) -> CvEntry:
        return CvEntry(
            statistic=self.statistic,
            params=dict(self.params),
            tail=self.tail,
            quantiles=dict(self.quantiles),
            provenance={
                "kind": "monte_carlo",
                "seed": self.seed,
                "reps": self.reps,
                "T_sim": self.T_sim,
                "null_dgp": self.null_dgp,
            },
            summary=dict(self.summary),
        )


def mc_critical_values(
    statistic: str,
    params: Mapping,
    T_sim: int,
    reps: int,
    seed: int,
    levels=DEFAULT_LEVELS,
    workers: int = 1,
    chunk_size: int = 2000,
) -> McRun:
    """Simulate a statistic under its null and report empirical critical values.

    Left-tail statistics report the `level` quantile, right-tail ones the
    `1 - level` quantile.  Given the same seed, the result is independent
    of `workers` and `chunk_size`.
    """
    if not isinstance(reps, (int, np.integer)) or reps < 1000:
        raise DomainError("published critical values need at least 1,000 replications")
    if not isinstance(T_sim, (int, np.integer)) or T_sim < 25:
        raise DomainError("simulation length must be at least 25")
    if not isinstance(workers, (int, np.integer)) or workers < 1:
        raise DomainError("workers must be a positive integer")
    if not isinstance(chunk_size, (int, np.integer)) or chunk_size < 1:
        raise DomainError("chunk_size must be a positive integer")
    levels = tuple(float(lv) for lv in levels)
    for lv in levels:
        if not 0.0 < lv < 1.0:
            raise DomainError("levels must lie strictly between 0 and 1")
    canon, parsed, tail, null_dgp = _parse_params(statistic, params)
    bounds = [(s, min(s + chunk_size, reps)) for s in range(0, reps, chunk_size)]
    if workers == 1:
        blocks = [_chunk_stats(statistic, parsed, int(T_sim), int(seed), a, b) for a, b in bounds]
    else:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            futures = [
                pool.submit(_chunk_stats, statistic, parsed, int(T_sim), int(seed), a, b)
                for a, b in bounds
            ]
            blocks = [f.result() for f in futures]
    stats = np.sort(np.concatenate(blocks))
    quantiles = {
        lv: float(np.quantile(stats, lv if tail == "left" else 1.0 - lv)) for lv in levels
    }
    summary = {
        "count": int(reps),
        "mean": float(stats.mean()),
        "sd": float(stats.std(ddof=1)),
        "min": float(stats[0]),
        "max": float(stats[-1]),
    }
    return McRun(
        statistic=statistic,
        params=canon,
        tail=tail,
        T_sim=int(T_sim),
        reps=int(reps),
        seed=int(seed),
        levels=levels,
        quantiles=quantiles,
        summary=summary,
        null_dgp=null_dgp,
    )


# --- size and power -----------------------------------------------------------


def _derived_seed(master: int, key: tuple) -> int:
    ss = np.random.SeedSequence(entropy=int(master), spawn_key=tuple(int(v) for v in key))
    return int(ss.generate_state(1, np.uint64)[0])


def _draw(spec, T: int, master: int, branch: int, index: int):
    """Simulate one replication, reseeding the spec deterministically.

    A mapping of name -> scalar spec yields independent series relabeled
    by their keys (for multivariate tests whose null is independence).
    """
    if isinstance(spec, Mapping):
        out = {}
        for j, (nm, sub) in enumerate(spec.items()):
            sim = simulate(replace(sub, seed=_derived_seed(master, (branch, index, j))), T)
            if not isinstance(sim, TimeSeries):
                raise DomainError("mapping entries must be scalar process specs")
            out[nm] = TimeSeries(sim.values, label=nm)
        return out
    return simulate(replace(spec, seed=_derived_seed(master, (branch, index))), T)


def _rejected(test: str, data, level: float, cv_source, params: Mapping) -> bool:
    if test == "adf":
        spec = AdfSpec(
            lags=params.get("lags", "auto"),
            deterministic=params.get("deterministic", "drift"),
        )
        report = adf_test(data, spec, cv_source=cv_source)
    elif test == "qlr":
        report = qlr_test(
            data, p=int(params["p"]), trim=float(params.get("trim", 0.15)), cv_source=cv_source
        )
    elif test == "chow":
        report = chow_test(data, p=int(params["p"]), tau=int(params["tau"]))
    elif test == "granger":
        report = granger_test(
            data, cause=params["cause"], effect=params["effect"], p=int(params["p"])
        )
    elif test == "egadf":
        y = data[params.get("y", "y")]
        xs = [data[nm] for nm in params.get("xs", ["x"])]
        fit = eg_adf_test(y, xs, cv_source=cv_source)
        if fit.degenerate:  # an exact relation is the strongest possible rejection
            return True
        report = fit.eg_adf
    else:
        raise DomainError(
            f"unknown test {test!r}; choose from adf, qlr, chow, granger, egadf"
        )
    if level not in report.decision:
        raise DomainError(f"level {level} not among computed levels {sorted(report.decision)}")
    return report.decision[level] == "reject"


def _rejection_counts(test, null_spec, alt_spec, T, master, level, cv_source, params, start, stop):
    null_hits = 0
    alt_hits = 0
    for i in range(start, stop):
        null_hits += _rejected(test, _draw(null_spec, T, master, 0, i), level, cv_source, params)
        alt_hits += _rejected(test, _draw(alt_spec, T, master, 1, i), level, cv_source, params)
    return null_hits, alt_hits


@dataclass(frozen=True)
class SizePower:
    """Empirical rejection rates under a null and an alternative DGP."""

    test: str
    size: float
    power: float
    reps: int
    level: float
    T: int
    null_rejections: int
    alt_rejections: int


def size_power_suite(
    test: str,
    null_spec,
    alt_spec,
    reps: int,
    level: float = 0.05,
    T: int = 500,
    seed: int = 0,
    cv_source=None,
    params: Mapping | None = None,
    workers: int = 1,
    chunk_size: int = 500,
) -> SizePower:
    """Rejection rate of a public test under two data-generating processes.

    Every replication runs the full public test path (simulation, fitting,
    critical-value lookup, decision) at the requested level.  size is the
    null rejection rate, power the alternative one.
    """
    if not isinstance(reps, (int, np.integer)) or reps < 1:
        raise DomainError("reps must be a positive integer")
    params = dict(params or {})
    bounds = [(s, min(s + chunk_size, reps)) for s in range(0, reps, chunk_size)]
    args = [
        (test, null_spec, alt_spec, int(T), int(seed), float(level), cv_source, params, a, b)
        for a, b in bounds
    ]
    if workers == 1:
        counts = [_rejection_counts(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            futures = [pool.submit(_rejection_counts, *a) for a in args]
            counts = [f.result() for f in futures]
    null_hits = sum(c[0] for c in counts)
    alt_hits = sum(c[1] for c in counts)
    return SizePower(
        test=test,
        size=null_hits / reps,
        power=alt_hits / reps,
        reps=int(reps),
        level=float(level),
        T=int(T),
        null_rejections=int(null_hits),
        alt_rejections=int(alt_hits),
    )
