import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import cached_curve
from thermozeno import bounds
from thermozeno.errors import DomainError, ZeroCoupling
from thermozeno.model import ModelParams, validate

# 50-digit mpmath evaluations, frozen before the fast path existed
CHI_HALF = 3.4015330390526108196
FINITE_T_UNIT = 0.029569280008328362273


def make(wa=10.0, wb=1.0, g12=1.0, g23=1.0, T=1.0):
    return validate(ModelParams.from_frequencies(wa, wb, g12, g23, temperature=T))


def test_chi_frozen_value():
    assert bounds.chi(0.5) == pytest.approx(CHI_HALF, rel=1e-15)


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.1, 1.5])
def test_chi_domain(eps):
    with pytest.raises(DomainError):
        bounds.chi(eps)


def test_chi_small_eps_asymptote():
    assert bounds.chi(1e-4) ** 2 == pytest.approx(8e4, rel=1e-2)


def test_chi_limits():
    assert bounds.chi(1 - 1e-12) == pytest.approx(1.0, abs=1e-2)
    assert bounds.chi(1e-300) > 1e150


@settings(max_examples=200)
@given(st.floats(1e-9, 1 - 1e-9), st.floats(1e-9, 1 - 1e-9))
def test_chi_strictly_decreasing(e1, e2):
    assume(abs(e1 - e2) > 1e-9 * max(e1, e2))
    lo, hi = sorted((e1, e2))
    assert bounds.chi(lo) > bounds.chi(hi) >= 1.0


def test_threshold_equal_couplings():
    p = make()
    for eps in (0.05, 0.3, 0.9):
        assert bounds.zeno_threshold(p, eps, 0) == pytest.approx(bounds.chi(eps) ** 2 - 1, rel=1e-14)
    assert bounds.zeno_threshold(p, 1 - 1e-15, 0) == pytest.approx(0.0, abs=1e-3)


def test_zero_g23():
    p = make(g23=0.0)
    with pytest.raises(ZeroCoupling):
        bounds.zeno_threshold(p, 0.1, 0)
    assert bounds.finite_T_lower_bound(p, 0.1) == 0.0


@settings(max_examples=300)
@given(g12=st.floats(0.05, 5), g23=st.floats(0.05, 5), eps=st.floats(0.01, 0.99),
       n_a=st.integers(0, 50))
def test_threshold_is_sharp(g12, g23, eps, n_a):
    p = make(g12=g12, g23=g23)
    nb_tilde = bounds.zeno_threshold(p, eps, n_a)
    assume(abs(nb_tilde - round(nb_tilde)) > 1e-7 * max(1.0, abs(nb_tilde)))
    n_b = max(0, math.ceil(nb_tilde))
    assert bounds.satisfies_zeno_condition(p, eps, n_a, n_b)
    if n_b - 1 >= 0:
        assert not bounds.satisfies_zeno_condition(p, eps, n_a, n_b - 1)


def test_finite_T_frozen_value():
    p = make(wa=1.0, wb=1.0, g12=1.0, g23=1.0, T=10.0)
    assert bounds.finite_T_lower_bound(p, 0.5) == pytest.approx(FINITE_T_UNIT, rel=1e-13)


def test_finite_T_requires_positive_temperature():
    with pytest.raises(DomainError):
        bounds.finite_T_lower_bound(make(T=0.0), 0.1)


@settings(max_examples=100, deadline=None)
@given(wa=st.floats(0.1, 20), wb=st.floats(0.1, 20), g12=st.floats(0.1, 3), g23=st.floats(0.1, 3),
       T=st.floats(0.05, 500), eps=st.floats(0.01, 0.99))
def test_closed_form_below_ceiling_sum(wa, wb, g12, g23, T, eps):
    p = make(wa, wb, g12, g23, T)
    closed = bounds.finite_T_lower_bound(p, eps)
    assert 0.0 <= closed <= 1.0
    assert closed <= bounds.ceiling_lower_bound(p, eps) * (1 + 1e-12) + 1e-300


def test_eta_fig2a():
    assert bounds.eta(make()) == pytest.approx(0.1, rel=1e-15)


def test_high_T_limit_to_one():
    # eta chi^2 ~ 8 eta / eps must vanish too
    p = make(wa=1e12, wb=1.0, g12=1.0, g23=1.0)
    assert bounds.high_T_lower_bound(p, 1e-4) > 1 - 1e-4


@pytest.mark.parametrize("eta_target", [1e-2, 1e-3, 1e-4, 1e-6])
def test_seventeen_halves(eta_target):
    p = make(wa=1.0 / eta_target, wb=1.0)
    eta = bounds.eta(p)
    assert bounds.high_T_lower_bound(p, math.sqrt(eta)) >= 1 - 8.5 * math.sqrt(eta)


def test_high_T_consistency_gap_shrinks():
    gaps = []
    for T in (1e2, 1e3, 1e4):
        p = make(T=T)
        f, h = bounds.finite_T_lower_bound(p, 0.1), bounds.high_T_lower_bound(p, 0.1)
        gaps.append(abs(f - h) / h)
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 0.05


def test_validity_flag():
    low = bounds.bound_report(make(T=1.0), 0.1)
    high = bounds.bound_report(make(T=1e6), 0.1)
    assert not low.high_temperature and high.high_temperature
    assert low.validity[1] == pytest.approx((10 + low.alpha_eps) / 1.0)


def test_report_invariants():
    r = bounds.bound_report(make(T=50.0), 0.3)
    assert r.chi >= 1 and r.eta > 0
    assert 0 <= r.finite_T_bound <= 1 and 0 <= r.high_T_bound <= 1
    assert r.beta_eps == pytest.approx(r.alpha_eps - 1)


@pytest.mark.parametrize("T", [1.0, 50.0, 250.0])
def test_best_bound_grid_refinement(T):
    p = make(T=T)
    coarse = bounds.best_bound(p, 64).finite_T_bound
    fine = bounds.best_bound(p, 256).finite_T_bound
    assert abs(coarse - fine) < 1e-3
    grid_max = max(bounds.finite_T_lower_bound(p, float(e)) for e in bounds.epsilon_grid(256))
    assert coarse >= grid_max - 1e-12


def test_best_bound_deterministic():
    p = make(T=50.0)
    assert bounds.best_bound(p) == bounds.best_bound(p)


def test_best_bound_without_first_coupling():
    r = bounds.best_bound(make(g12=0.0, T=10.0))
    assert r.finite_T_bound > 1 - 1e-5


@pytest.mark.parametrize("T", [0.1, 1.0, 50.0, 250.0])
def test_best_bound_below_exact_minimum(T):
    curve = cached_curve(10.0, 1.0, 1.0, 1.0, T)
    assert bounds.best_bound(make(T=T)).finite_T_bound <= curve.minimum() + 1e-12


def test_random_dominance(rng):
    from thermozeno.thermal import survival_curve, uniform_times
    from thermozeno.model import Tolerances
    for _ in range(6):
        wa, wb = rng.uniform(0.5, 10, 2)
        g12, g23 = rng.uniform(0.2, 2, 2)
        T = float(rng.uniform(0.5, 20))
        p = make(wa, wb, g12, g23, T)
        curve = survival_curve(p, uniform_times(15, 150), Tolerances(tail_mass=1e-8))
        for eps in (0.05, 0.1, 0.3, 0.5, 0.9):
            assert bounds.finite_T_lower_bound(p, eps) <= curve.p1.min() + 1e-8
