import cmath
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from scipy.optimize import linprog

from torusrp import AtomicMeasure, framing_indices, lebesgue_on_points, sample_graph_curve
from torusrp.core import points_array

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

TWO_PI = 2 * math.pi


def brute_moment(atoms, k):
    """Pure-Python sum of w * exp(i <k, a>) over (angles, weight) pairs."""
    total = 0j
    for angles, w in atoms:
        total += w * cmath.exp(1j * sum(kj * aj for kj, aj in zip(k, angles)))
    return total


def diagonal(m):
    return lebesgue_on_points(sample_graph_curve("identity", m))


def antidiagonal(m):
    return lebesgue_on_points(sample_graph_curve("negated", m))


def random_measure(rng, m=None, dim=2, kind="complex"):
    m = int(rng.integers(1, 20)) if m is None else m
    angles = rng.uniform(0, TWO_PI, (m, dim))
    if kind == "positive":
        w = rng.uniform(0.05, 1.0, m)
    elif kind == "real":
        w = rng.normal(size=m)
    else:
        w = rng.normal(size=m) + 1j * rng.normal(size=m)
    return AtomicMeasure(dim, angles, w)


def highs_epsilon(S, N, framing):
    """Optimal half-plane margin from an independently assembled LP (HiGHS)."""
    P = points_array(S)
    K = framing_indices(P.shape[1], N, framing)
    phase = P @ K.T
    # variables: Re c, Im c (free), eps;  Re(c e^{it}) = Re c cos t - Im c sin t
    A_ub = np.hstack([-np.cos(phase), np.sin(phase), np.ones((len(P), 1))])
    nk = len(K)
    # l1 budget through auxiliary magnitudes u >= |x|
    n = 2 * nk + 1
    A = np.zeros((len(P) + 1 + 4 * nk, n + 2 * nk))
    A[:len(P), :n] = A_ub
    A[len(P), n:] = 1.0
    for j in range(2 * nk):
        A[len(P) + 1 + 2 * j, j], A[len(P) + 1 + 2 * j, n + j] = 1.0, -1.0
        A[len(P) + 2 + 2 * j, j], A[len(P) + 2 + 2 * j, n + j] = -1.0, -1.0
    b = np.zeros(A.shape[0])
    b[len(P)] = 1.0
    c = np.zeros(A.shape[1])
    c[2 * nk] = -1.0
    bounds = [(None, None)] * (2 * nk) + [(None, None)] + [(0, None)] * (2 * nk)
    res = linprog(c, A_ub=A, b_ub=b, bounds=bounds, method="highs")
    assert res.status == 0
    return -res.fun


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
