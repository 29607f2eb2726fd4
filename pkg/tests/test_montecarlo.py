import numpy as np
import pytest

from tsecon import (
    ArProcess,
    CriticalValueCache,
    DomainError,
    InterceptBreakAr,
    RandomWalk,
    TimeSeries,
    VarProcess,
    WhiteNoise,
    adf_test,
    mc_critical_values,
    qlr_test,
    rng_for,
    sample_values,
    size_power_suite,
)
from tsecon.breaks import chow_f_scan, qlr_window
from tsecon.montecarlo import _batched_adf_stat
from tsecon.unitroot import adf_statistic


def test_run_is_independent_of_scheduling():
    kwargs = dict(statistic="adf", params={"deterministic": "drift", "lags": 0},
                  T_sim=60, reps=1_200, seed=5)
    a = mc_critical_values(**kwargs, chunk_size=1_200)
    b = mc_critical_values(**kwargs, chunk_size=171)
    c = mc_critical_values(**kwargs, workers=2, chunk_size=300)
    assert a.quantiles == b.quantiles == c.quantiles
    assert a.summary == b.summary == c.summary


def test_seed_changes_the_draws():
    kwargs = dict(statistic="adf", params={"deterministic": "drift", "lags": 0},
                  T_sim=50, reps=1_000)
    a = mc_critical_values(**kwargs, seed=1)
    b = mc_critical_values(**kwargs, seed=2)
    assert a.quantiles != b.quantiles


def test_left_tail_quantiles_are_ordered():
    run = mc_critical_values("adf", {"deterministic": "drift", "lags": 0},
                             T_sim=100, reps=4_000, seed=9)
    q = run.quantiles
    assert run.tail == "left"
    assert q[0.01] < q[0.05] < q[0.10] < 0.0


def test_right_tail_quantiles_are_ordered():
    run = mc_critical_values("qlr", {"p": 1, "trim": 0.15},
                             T_sim=80, reps=1_000, seed=3)
    q = run.quantiles
    assert run.tail == "right"
    assert q[0.01] > q[0.05] > q[0.10] > 0.0


def test_dickey_fuller_drift_quantiles_near_literature():
    run = mc_critical_values("adf", {"deterministic": "drift", "lags": 0},
                             T_sim=500, reps=20_000, seed=71)
    assert run.quantiles[0.05] == pytest.approx(-2.86, abs=0.06)
    assert run.quantiles[0.01] == pytest.approx(-3.43, abs=0.10)


def test_batched_adf_agrees_with_public_statistic():
    rng = rng_for(123)
    paths = np.vstack([sample_values(RandomWalk(), 200, rng_for(123, r)) for r in range(40)])
    for det, lags in (("drift", 0), ("drift", 2), ("trend", 1), ("none", 0)):
        batched = _batched_adf_stat(paths, det, lags)
        direct = np.array([adf_statistic(p, det, lags)[0] for p in paths])
        assert np.max(np.abs(batched - direct)) < 1e-10
    auto = _batched_adf_stat(paths, "drift", "auto")
    direct_auto = np.array([adf_statistic(p, "drift", "auto")[0] for p in paths])
    assert np.max(np.abs(auto - direct_auto)) < 1e-10


def test_batched_qlr_agrees_with_public_statistic():
    paths = np.vstack([sample_values(WhiteNoise(), 150, rng_for(9, r)) for r in range(25)])
    taus = qlr_window(150, 1, 0.15)
    scan_max = chow_f_scan(paths, 1, taus).max(axis=1)
    cache = CriticalValueCache(entries=[
        mc_critical_values("qlr", {"p": 1, "trim": 0.15}, T_sim=80, reps=1_000,
                           seed=1).to_entry()
    ])
    for r in range(0, 25, 6):
        rep = qlr_test(TimeSeries(paths[r]), p=1, cv_source=cache)
        assert rep.statistic == pytest.approx(scan_max[r], rel=1e-10)


def test_to_entry_round_trips_through_a_cache_file(tmp_path):
    run = mc_critical_values("adf", {"deterministic": "drift", "lags": 0},
                             T_sim=50, reps=1_000, seed=44)
    entry = run.to_entry()
    assert entry.statistic == "adf"
    assert entry.tail == "left"
    assert entry.provenance["kind"] == "monte_carlo"
    assert entry.provenance["seed"] == 44
    assert entry.provenance["reps"] == 1_000
    assert "null_dgp" in entry.provenance
    assert entry.summary["count"] == 1_000

    path = tmp_path / "cv.json"
    cache = CriticalValueCache(entries=[entry], generator=run.generator)
    cache.save(str(path))
    loaded = CriticalValueCache.load(str(path))
    got = loaded.lookup("adf", {"deterministic": "drift", "lags": "0"}, run.levels)
    assert got.quantiles == entry.quantiles


def test_cache_lookup_errors(tmp_path):
    cache = CriticalValueCache(entries=[])
    with pytest.raises(DomainError, match="no cached critical values"):
        cache.lookup("adf", {"deterministic": "drift", "lags": "auto"}, (0.05,))
    run = mc_critical_values("adf", {"deterministic": "drift", "lags": 0},
                             T_sim=50, reps=1_000, seed=1, levels=(0.1, 0.05))
    cache.put(run.to_entry())
    with pytest.raises(DomainError, match="lacks quantiles"):
        cache.lookup("adf", {"deterministic": "drift", "lags": "0"}, (0.01,))


def test_parameter_validation():
    with pytest.raises(DomainError):
        mc_critical_values("adf", {"deterministic": "drift", "lags": 0},
                           T_sim=50, reps=500, seed=1)  # too few reps
    with pytest.raises(DomainError):
        mc_critical_values("adf", {"deterministic": "drift", "lags": 0},
                           T_sim=10, reps=1_000, seed=1)  # T too small
    with pytest.raises(DomainError):
        mc_critical_values("cusum", {}, T_sim=50, reps=1_000, seed=1)
    with pytest.raises(DomainError):
        mc_critical_values("adf", {"deterministic": "hft", "lags": 0},
                           T_sim=50, reps=1_000, seed=1)
    with pytest.raises(DomainError):
        mc_critical_values("egadf", {"n_regressors": 0}, T_sim=50, reps=1_000, seed=1)
    with pytest.raises(DomainError):
        mc_critical_values("qlr", {"p": 1, "trim": 0.15, "bogus": 1},
                           T_sim=50, reps=1_000, seed=1)


def test_size_power_chow_under_null():
    out = size_power_suite(
        "chow",
        null_spec=ArProcess(betas=(0.5,)),
        alt_spec=InterceptBreakAr(beta0_post=1.5, betas=(0.5,)),
        reps=400,
        T=300,
        seed=10,
        params={"p": 1, "tau": 150},
    )
    assert out.test == "chow"
    assert out.reps == 400
    assert abs(out.size - 0.05) < 0.03
    assert out.power > 0.9
    assert out.null_rejections == round(out.size * 400)


def test_size_power_granger_independence_null():
    causal = VarProcess(
        delta=(0.0, 0.0),
        coeff_matrices=(((0.3, 0.8), (0.0, 0.5)),),
        innovation_cov=((1.0, 0.0), (0.0, 1.0)),
    )
    out = size_power_suite(
        "granger",
        null_spec={"y1": ArProcess(betas=(0.3,)), "y2": ArProcess(betas=(0.5,))},
        alt_spec=causal,
        reps=300,
        T=400,
        seed=21,
        params={"cause": "y2", "effect": "y1", "p": 1},
    )
    assert abs(out.size - 0.05) < 0.035
    assert out.power > 0.95


def test_size_power_is_seed_reproducible():
    kwargs = dict(
        test="chow",
        null_spec=ArProcess(betas=(0.4,)),
        alt_spec=InterceptBreakAr(beta0_post=2.0, betas=(0.4,)),
        reps=120,
        T=200,
        seed=33,
        params={"p": 1, "tau": 100},
    )
    a = size_power_suite(**kwargs)
    b = size_power_suite(**kwargs)
    c = size_power_suite(**kwargs, workers=2, chunk_size=40)
    assert (a.size, a.power) == (b.size, b.power) == (c.size, c.power)
