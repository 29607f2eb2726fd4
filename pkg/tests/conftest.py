"""Shared fixtures and extended-precision reference implementations."""

import mpmath as mp
import numpy as np
import pytest


def mp_ols_coefficients(X, y, dps=50):
    """Solve the normal equations X'X b = X'y at dps decimal digits.

    Independent of the package's QR-based solver; used as the ground truth
    for coefficient accuracy checks.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    with mp.workdps(dps):
        Xm = mp.matrix([[mp.mpf(v) for v in row] for row in X])
        ym = mp.matrix([mp.mpf(v) for v in y])
        G = Xm.T * Xm
        h = Xm.T * ym
        b = mp.lu_solve(G, h)
        return np.array([float(v) for v in b])


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)
