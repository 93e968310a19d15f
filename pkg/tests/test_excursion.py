import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from perm132 import _kernels
from perm132.algebra import catalan
from perm132.excursion import (
    DiscreteExcursion,
    profile_convergence_check,
    psi,
    psi_bruteforce,
    sample_excursion,
    sample_psi,
    sample_psi_stats,
    supported,
)
from perm132.perms import PatternError


def dyck_excursion(heights):
    heights = np.asarray(heights, dtype=float)
    m = (len(heights) - 1) // 2
    return DiscreteExcursion(m, heights / math.sqrt(2 * m))


@st.composite
def excursions(draw, max_m=25):
    m = draw(st.integers(2, max_m))
    seed = draw(st.integers(0, 2**32 - 1))
    return sample_excursion(m, seed)


def test_shape_and_endpoints():
    e = sample_excursion(50, 1)
    assert e.values.shape == (101,)
    assert e.values[0] == 0 and e.values[-1] == 0 and (e.values >= 0).all()
    steps = np.diff(e.values) * math.sqrt(100)
    assert np.allclose(np.abs(steps), 1)
    with pytest.raises(ValueError):
        sample_excursion(1, 0)


def test_invalid_excursions_rejected():
    with pytest.raises(ValueError):
        DiscreteExcursion(2, np.array([0, 1, -1, 1, 0.0]))
    with pytest.raises(ValueError):
        DiscreteExcursion(2, np.array([0, 1, 0.0]))


def test_dyck_paths_are_uniform():
    m, reps = 3, 20_000
    freq = Counter(tuple(sample_excursion(m, 5, r).values.round(9)) for r in range(reps))
    assert len(freq) == catalan(m)
    p = 1 / catalan(m)
    se = math.sqrt(p * (1 - p) / reps)
    assert all(abs(c / reps - p) <= 4 * se for c in freq.values())


def test_cycle_lemma_rotation():
    steps = np.array([-1, 1, -1, -1, 1], dtype=np.int64)
    assert _kernels.dyck_from_cycle(steps).tolist() == [0, 1, 0, 1, 0]


def test_zero_excursion():
    z = DiscreteExcursion.zero(10)
    assert psi("12", z) == 0 and psi("213", z) == 0 and psi("123", z) == 0


@pytest.mark.parametrize("k", range(1, 7))
def test_decreasing_is_constant(k):
    e = sample_excursion(20, k)
    assert psi(tuple(range(k, 0, -1)), e) == pytest.approx(1 / math.factorial(k))


def test_unsupported_patterns():
    for s in ("1432", "2413", "3214", ""):
        with pytest.raises(PatternError):
            psi(s, sample_excursion(5, 0))
    assert supported("1234") and supported("312") and not supported("4213")


def test_tent_integrals():
    # a single peak of height m at the midpoint: int e = m/(2m) * 1/2 / sqrt(2m)
    m = 40
    h = np.concatenate([np.arange(m + 1), np.arange(m - 1, -1, -1)])
    e = dyck_excursion(h)
    area = 0.5 * (m / math.sqrt(2 * m))
    assert psi("12", e) == pytest.approx(math.sqrt(2) * area, rel=1e-12)


@given(excursions())
def test_fast_and_direct_double_integrals_agree(e):
    for s in ("213", "231", "312"):
        assert psi(s, e) == pytest.approx(psi_bruteforce(s, e), rel=1e-10, abs=1e-14)


@given(excursions(200))
def test_linear_relation_per_sample(e):
    lhs = psi("12", e)
    rhs = 2 * psi("213", e) + psi("231", e) + psi("312", e)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-15)


@given(excursions(200))
def test_time_reversal(e):
    r = e.reversed()
    assert psi("231", r) == pytest.approx(psi("312", e), rel=1e-12, abs=1e-15)
    assert psi("213", r) == pytest.approx(psi("213", e), rel=1e-12, abs=1e-15)


def test_mirror_functionals_differ_per_sample():
    perms, vals = sample_psi(1000, ["231", "312"], 400, 3)
    frac = np.mean(np.abs(vals[:, 0] - vals[:, 1]) > 0.01)
    assert frac > 0.3
    assert abs(vals[:, 0].mean() - vals[:, 1].mean()) < 4 * math.sqrt((vals[:, 0] - vals[:, 1]).var() / 400)


def test_area_moments():
    stats = sample_psi_stats(2000, ["12"], 3000, 21)
    st12 = stats.per_pattern["12"]
    area_mean = st12["mean"] / math.sqrt(2)
    area_se = st12["se"] / math.sqrt(2)
    allowance = 1 / math.sqrt(2000)
    assert abs(area_mean - math.sqrt(math.pi / 8)) <= 3 * area_se + allowance
    assert abs(st12["m2"] / 2 - 5 / 12) <= 3 * st12["m2_se"] / 2 + allowance


def test_psi_stats_deterministic_across_threads():
    a = sample_psi_stats(100, ["12", "213"], 20, 4, threads=1)
    b = sample_psi_stats(100, ["12", "213"], 20, 4, threads=4)
    assert a.to_dict() == b.to_dict()


def test_profile_report():
    rep = profile_convergence_check(500, 400, 8, excursion_m=500)
    for key in ("mean", "mean_se", "var", "limit_mean", "limit_var", "exact_mean", "exact_var", "excursion_mean", "two_sample_z"):
        assert key in rep
    assert rep["limit_var"] == pytest.approx((10 - 3 * math.pi) / 12)
    assert abs(rep["exact_mean_z"]) < 4
    assert abs(rep["two_sample_z"]) < 4


def test_left_height_profile_at_4000():
    rep = profile_convergence_check(4000, 2000, 40)
    bias = abs(rep["exact_mean"] - rep["limit_mean"])
    assert abs(rep["mean"] - rep["exact_mean"]) <= 3 * rep["mean_se"]
    assert abs(rep["mean"] - rep["limit_mean"]) <= 3 * rep["mean_se"] + bias
    assert abs(rep["var"] - rep["limit_var"]) <= 4 * rep["var_se"]
