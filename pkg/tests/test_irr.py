import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import exp_family_roots, exp_profile_sign_grid
from profitability import (
    ConstantSensitivityFamily,
    DomainError,
    Exponential,
    ExponentialFamily,
    GeneralizedHyperbolicFamily,
    PowerFamily,
    StepCashFlow,
    Verdict,
    acceptance_set,
    g_eval,
    in_natural_domain,
    is_in_P_plus,
    is_regular,
    natural_extension_rr,
    possesses_irr,
    postpone,
    rr_closed_form,
    scale,
)
from profitability.irr import check_d_family
from strategies import flows, whole_times

E = ExponentialFamily()
X = StepCashFlow([(0, 1), (1, -2), (2, 1.1)])
Y = StepCashFlow([(0, -1), (1, 2), (2, -0.7)])
Z = StepCashFlow([(0, -1), (1, 2.7), (2, -1.8)])
Y_ROOT = -math.log((2 - math.sqrt(1.2)) / 1.4)


def sign_changes(x):
    s = [math.copysign(1, a) for a in x.amounts]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def test_g_eval_examples():
    assert math.isclose(g_eval(E, Y, 0), 0.3)
    assert g_eval(E, Y, math.inf) == -1
    # 1.1u^2 - 2u + 1 has a negative discriminant
    assert 4 - 4 * 1.1 < 0
    assert all(g_eval(E, X, lam) > 0 for lam in np.linspace(0, 20, 101))


def test_acceptance_sets_of_the_worked_triple():
    assert acceptance_set(E, Y).intervals == ((0.0, pytest.approx(Y_ROOT, abs=1e-12)),)
    (lo, hi), = acceptance_set(E, Z).intervals
    assert lo == pytest.approx(-math.log(5 / 6), abs=1e-12)
    assert hi == pytest.approx(-math.log(2 / 3), abs=1e-12)
    assert acceptance_set(E, X).is_everything()


def test_possesses_irr_examples():
    assert possesses_irr(E, Y) == pytest.approx(Y_ROOT, abs=1e-12)
    assert round(possesses_irr(E, Y), 2) == 0.44
    assert possesses_irr(E, Z) is None
    assert possesses_irr(E, X) is None
    assert possesses_irr(E, StepCashFlow([(0, -1), (1, math.exp(0.2))])) == pytest.approx(0.2, abs=1e-12)


def test_rr_closed_form_examples():
    assert rr_closed_form(E, StepCashFlow([(0, -1), (2, math.exp(0.2))])) == pytest.approx(0.1, rel=1e-12)
    assert rr_closed_form(E, StepCashFlow([(1, -2), (3, 2 * math.exp(0.6))])) == pytest.approx(0.3, rel=1e-12)
    with pytest.raises(ValueError):
        rr_closed_form(E, StepCashFlow([(0, -2), (1, 1)]))
    with pytest.raises(ValueError):
        rr_closed_form(E, Y)


def test_natural_extension_examples():
    assert natural_extension_rr(E, X) == math.inf
    assert natural_extension_rr(E, StepCashFlow([(0, -1), (1, 0.5)])) == -math.inf
    assert natural_extension_rr(E, Y) == pytest.approx(Y_ROOT, abs=1e-12)
    with pytest.raises(DomainError):
        natural_extension_rr(E, Z)


def test_natural_domain_examples():
    assert not in_natural_domain(E, Z)
    assert in_natural_domain(E, Y)
    assert in_natural_domain(E, StepCashFlow([(0, 2), (1, -1), (3, 0.5)]))


def test_regularity_examples():
    assert is_regular(E, Y) is Verdict.TRUE
    assert is_regular(E, StepCashFlow([(0, -1), (1, 1)])) is not Verdict.TRUE
    square = StepCashFlow([(0, -1), (1, 2), (2, -1)])
    acc = acceptance_set(E, square)
    assert acc.isolated_points == (0.0,)
    assert is_regular(E, square) is Verdict.FALSE


def test_other_families_agree_with_clock_substitution():
    gh = GeneralizedHyperbolicFamily(1.0)
    x = StepCashFlow([(0, -1), (3, 2)])
    r = possesses_irr(gh, x)
    assert r == pytest.approx(rr_closed_form(gh, x), abs=1e-12)
    assert r == pytest.approx(math.log(2) / math.log(4), abs=1e-12)
    cs = ConstantSensitivityFamily(2.0)
    assert possesses_irr(cs, x) == pytest.approx(math.log(2) / 9, abs=1e-12)
    pw = PowerFamily(Exponential(0.5))
    assert possesses_irr(pw, x) == pytest.approx(math.log(2) / 1.5, abs=1e-12)
    with pytest.raises(ValueError):
        PowerFamily(Exponential(0.0))


@pytest.mark.parametrize(
    "family",
    [E, ConstantSensitivityFamily(0.5), GeneralizedHyperbolicFamily(2.0), PowerFamily(Exponential(0.3))],
)
def test_family_ratio_condition_on_samples(family):
    rng = np.random.default_rng(7)
    triples = []
    for _ in range(200):
        t, tau = np.sort(rng.uniform(0, 20, 2))
        l1, l2 = np.sort(rng.uniform(0, 5, 2))
        triples.append((t, tau + 1e-3, l1, l2 + 1e-3))
    assert check_d_family(family, triples)


@given(flows(max_size=8))
def test_root_count_respects_descartes_bound(x):
    acc = acceptance_set(E, x)
    assert len(set(acc.roots) | set(acc.tangencies)) <= sign_changes(x)


@given(flows(max_size=6), st.integers(-4, 4))
def test_acceptance_set_is_scale_invariant(x, k):
    assert acceptance_set(E, scale(x, 2.0**k)) == acceptance_set(E, x)


@given(flows(max_size=6), st.floats(0.01, 10))
def test_acceptance_set_is_stationary(x, tau):
    a, b = acceptance_set(E, x), acceptance_set(E, postpone(x, tau))
    assert len(a.intervals) == len(b.intervals)
    for (p, q), (r, s) in zip(a.intervals, b.intervals):
        assert p == pytest.approx(r, abs=1e-6) and q == pytest.approx(s, abs=1e-6)


@given(st.floats(0, 10), st.floats(0.01, 10), st.floats(0.1, 10), st.floats(1, 30))
def test_closed_form_agrees_with_root_finding(t, gap, a, ratio):
    x = StepCashFlow([(t, -a), (t + gap, a * ratio)])
    numeric = possesses_irr(E, x)
    assert numeric is not None
    assert abs(numeric - rr_closed_form(E, x)) <= 10 * 1e-9


@given(flows(min_size=2, max_size=6, time_strategy=whole_times))
def test_roots_match_polynomial_oracle(x):
    assume(abs(x.total) > 1e-6 and len(x) >= 2)
    expected = exp_family_roots(x.times, x.amounts)
    # keep well-separated simple roots, where the polynomial oracle is reliable
    assume(all(b - a > 1e-3 for a, b in zip(expected, expected[1:])))
    acc = acceptance_set(E, x)
    assume(not acc.tangencies)
    assert len(acc.roots) == len(expected)
    for r, e in zip(acc.roots, expected):
        assert r == pytest.approx(e, abs=1e-7)


@given(flows(max_size=6))
def test_membership_matches_profile_sign(x):
    lams = np.linspace(0, 8, 41)
    vals = exp_profile_sign_grid(x.times, x.amounts, lams)
    size = sum(abs(a) for a in x.amounts)
    acc = acceptance_set(E, x)
    for lam, v in zip(lams, vals):
        if abs(v) > 1e-8 * size:
            assert (lam in acc) == (v > 0)


@given(flows(max_size=6))
def test_positive_cone_lies_in_natural_domain(x):
    if is_in_P_plus(x):
        assert acceptance_set(E, x).is_everything() or x.total == 0
        assert in_natural_domain(E, x)
