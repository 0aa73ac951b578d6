import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import admissible_weights
from profitability import (
    DomainError,
    Exponential,
    Impatient,
    NpvFunctional,
    StepCashFlow,
    Truncated,
    Unit,
    classify,
    default_grid,
    h_gamma,
    pi,
    ri,
    ri_natural_extension,
    scale,
    tilde_bounds,
    undiscounted_pi_extension,
)
from profitability.indices import tilde_values
from strategies import discounts, flows, paybacks

U = NpvFunctional(Unit())
CHI = NpvFunctional(Impatient(), label="chi")
E1, E2 = NpvFunctional(Exponential(0.1)), NpvFunctional(Exponential(0.2))


def test_pi_examples():
    assert pi(U, StepCashFlow([(0, -1), (1, 3)])) == 3
    assert pi(U, StepCashFlow([(0, -2), (1, 3)])) == 1.5
    assert pi(U, StepCashFlow([(0, 1), (1, 3)])) is None
    assert pi(U, StepCashFlow([(0, -1), (1, 0.5)])) is None


def test_ri_examples():
    x = StepCashFlow([(0, -1), (1, 3)])
    assert ri(U, CHI, x) == 3
    assert ri(U, CHI, StepCashFlow([(0, -1), (1, 1)])) == 1
    with pytest.raises(ValueError):
        ri(U, NpvFunctional(Unit(), label="again"), x)


def test_undiscounted_extension_examples():
    # final balance is -1 + 4 = 3, so the index is (3 + 1) / 1
    assert undiscounted_pi_extension(StepCashFlow([(0, -1), (2, 4)])) == 4
    assert undiscounted_pi_extension(StepCashFlow([(0, -1), (1, 0.5)])) == 0
    assert undiscounted_pi_extension(StepCashFlow([(0, 1), (1, 1)])) == math.inf
    for b in (0.5, 1, 2.5):
        x = StepCashFlow([(0, -1), (3, b)])
        assert undiscounted_pi_extension(x) == (b if b >= 1 else 0)
    with pytest.raises(DomainError):
        undiscounted_pi_extension(StepCashFlow([(0, 1), (1, -2)]))


def test_tilde_bounds_unit_against_chi():
    b = tilde_bounds(U, CHI, [0, 1, 2, 5])
    assert (b.w_inf, b.w_sup) == (0.0, 1.0)
    assert b.raw == (0.0, 1.0)
    with pytest.raises(ValueError):
        tilde_bounds(U, U)


def test_tilde_bounds_exponential_pair_matches_constraint_scan():
    grid = np.arange(51.0)
    b = tilde_bounds(E1, E2, grid)
    ws = np.linspace(-1, 3, 40001)
    ok = admissible_weights(np.exp(-0.1 * grid), np.exp(-0.2 * grid), ws)
    step = ws[1] - ws[0]
    assert b.raw[0] == pytest.approx(ok.min(), abs=step)
    assert b.raw[1] == pytest.approx(ok.max(), abs=step)
    # the refined grid tightens the upper bound towards the exact value 2
    assert 2.0 <= b.w_sup < b.raw[1]
    assert b.w_inf <= 0 and b.w_sup >= 1


def test_tilde_bounds_rejects_bad_grids():
    with pytest.raises(ValueError):
        tilde_bounds(E1, E2, [1, 2, 3])
    with pytest.raises(ValueError):
        tilde_bounds(E1, E2, [0, 2, 1])


def test_default_grid_covers_flow_and_cutoffs():
    x = StepCashFlow([(0, -1), (3, 2)])
    g = default_grid(x, (Truncated(Unit(), 7),))
    assert g[0] == 0 and 3 in g and 7 in g and g[-1] >= 28
    assert np.all(np.diff(g) > 0)


def test_ri_natural_extension_examples():
    assert ri_natural_extension(U, CHI, StepCashFlow([(0, -1), (1, 0.5)])) == 0
    assert ri_natural_extension(U, CHI, StepCashFlow([(0, 1), (1, 1)])) == math.inf
    assert ri_natural_extension(U, CHI, StepCashFlow([(0, -1), (1, 3)])) == 3
    with pytest.raises(DomainError):
        ri_natural_extension(U, CHI, StepCashFlow([(0, 1), (1, -2)]))


def test_tilde_values_at_unit_weights():
    x = StepCashFlow([(0, -1), (1, 3)])
    b = tilde_bounds(U, CHI, [0, 1, 2])
    assert tilde_values(U, CHI, x, b) == (U(x), CHI(x))


@given(discounts, flows(), st.integers(-3, 3))
def test_pi_is_scale_invariant(alpha, x, k):
    F = NpvFunctional(alpha)
    a, b = pi(F, x), pi(F, scale(x, 2.0**k))
    assert a == b


@given(discounts, flows())
def test_ri_against_chi_equals_pi(alpha, x):
    assume(classify(x).Q4)
    F = NpvFunctional(alpha)
    p, r = pi(F, x), ri(F, CHI, x)
    assert (p is None) == (r is None)
    if p is not None:
        assert r == pytest.approx(p, rel=1e-12)


@given(discounts, paybacks(), paybacks())
def test_extension_ranks_like_ri_on_core_domain(alpha, x, y):
    F = NpvFunctional(alpha)
    rx, ry = ri(F, CHI, x), ri(F, CHI, y)
    assume(rx is not None and ry is not None and abs(rx - ry) > 1e-9)
    ex, ey = ri_natural_extension(F, CHI, x), ri_natural_extension(F, CHI, y)
    assert (rx > ry) == (ex > ey)


@given(discounts, flows(), st.floats(0, 1), st.floats(0, 1))
def test_reduction_is_monotone_for_profitable_projects(alpha, x, g1, g2):
    assume(classify(x).Q4 and alpha(0) == 1 and NpvFunctional(alpha)(x) >= 0)
    lo, hi = sorted((g1, g2))
    assert h_gamma(alpha, lo, x) <= h_gamma(alpha, hi, x) + 1e-12


@given(discounts, discounts)
def test_tilde_bounds_contain_unit_interval(alpha, beta):
    assume(alpha != beta)
    b = tilde_bounds(NpvFunctional(alpha), NpvFunctional(beta), np.linspace(0, 30, 61))
    assert b.w_inf <= 0 <= 1 <= b.w_sup
