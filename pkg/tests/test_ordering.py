import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import hull_grid_feasible, npv_raw
from profitability import (
    CompoundAnnual,
    DFamilyRange,
    Exponential,
    ExponentialFamily,
    Finite,
    GeneralizedHyperbolic,
    Impatient,
    IntensityFamily,
    NpvFunctional,
    Product,
    ReductionFamily,
    Relation,
    StepCashFlow,
    TruncationFamily,
    Union,
    Unit,
    Usury,
    accepts,
    axiom_harness,
    compare,
    compare_convex_hull_finite,
    hull_interval,
    is_in_P_plusplus,
    negate,
    rate_truncation_scenarios,
    sign_compare,
    truncate,
    usury_classify,
)
from strategies import discounts, flows

E = ExponentialFamily()
X = StepCashFlow([(0, 1), (1, -2), (2, 1.1)])
Y = StepCashFlow([(0, -1), (1, 2), (2, -0.7)])
Z = StepCashFlow([(0, -1), (1, 2.7), (2, -1.8)])
A = StepCashFlow([(0, -1), (1, 3)])
B = StepCashFlow([(0, -1), (1, 2)])
U = NpvFunctional(Unit(), label="unit")
CHI = NpvFunctional(Impatient(), label="chi")
ZERO = StepCashFlow([])


def test_accepts_examples():
    assert accepts(U, StepCashFlow([(0, -1), (1, 1)]))
    assert not accepts(CHI, A)
    assert accepts(NpvFunctional(CompoundAnnual(0.6)), StepCashFlow([(0, -1), (1, 1.7)]))


def test_worked_triple_is_strictly_ordered():
    S = DFamilyRange(E)
    for p, q in ((X, Y), (Y, Z), (X, Z)):
        r = compare(S, p, q)
        assert r.relation is Relation.GREATER_STRICT
        assert r.accepts_x_only is not None and r.accepts_y_only is None
        assert compare(S, q, p).relation is Relation.LESS_STRICT


def test_finite_pair_is_equivalent_but_reduction_separates():
    assert compare(Finite((U, CHI)), A, B).relation is Relation.EQUIVALENT
    r = compare(ReductionFamily(Unit()), A, B)
    assert r.relation is Relation.GREATER_STRICT
    # H_gamma(A) >= 0 on [1/3, 1], H_gamma(B) >= 0 on [1/2, 1]
    g = float(r.accepts_x_only.split("=")[1].rstrip("]"))
    assert 1 / 3 <= g < 1 / 2


@pytest.mark.parametrize(
    "S",
    [
        Finite((U, CHI)),
        DFamilyRange(E, (0.1, 3)),
        TruncationFamily(Exponential(0.1), (1, math.inf)),
        ReductionFamily(Exponential(0.1)),
        IntensityFamily(GeneralizedHyperbolic(0.3, 1)),
        rate_truncation_scenarios(0.02, 0.04, 5),
        Union((Finite((U,)), DFamilyRange(E, (0, 1)))),
    ],
)
def test_compare_is_reflexive(S):
    for p in (X, Y, Z, A, ZERO):
        assert compare(S, p, p).relation is Relation.EQUIVALENT
        assert sign_compare(S, p, p).relation is Relation.EQUIVALENT


def test_finite_deduplicates_by_label():
    S = Finite((U, NpvFunctional(Exponential(0.5), label="unit"), CHI))
    assert [F.label for F in S.functionals] == ["unit", "chi"]
    with pytest.raises(ValueError):
        Finite(())


def test_incomparable_witnesses():
    S = Finite((U, NpvFunctional(Exponential(1.0), label="e1")))
    x = StepCashFlow([(0, -1), (5, 3)])
    r = compare(S, x, negate(x))
    assert r.relation is Relation.INCOMPARABLE
    assert r.witnesses == ("unit", "e1")


def test_boundary_values_are_undetermined():
    S = Finite((U,))
    tiny = StepCashFlow([(0, -1), (1, 1 - 1e-12)])
    # A >= tiny holds outright; the converse hinges on a near-zero NPV
    assert compare(S, tiny, A).relation is Relation.LESS_EQ
    assert compare(S, tiny, negate(A)).relation is Relation.GREATER_EQ
    other = StepCashFlow([(0, -1), (1, 1 + 1e-12)])
    assert compare(S, tiny, other).relation is Relation.UNDETERMINED


def test_truncation_family_is_exact_on_breakpoints():
    S = TruncationFamily(Unit(), (0.5, math.inf))
    fast = StepCashFlow([(0, -1), (1, 1.5), (3, -0.2)])
    slow = StepCashFlow([(0, -1), (2, 2)])
    r = compare(S, fast, slow)
    assert r.relation is Relation.GREATER_STRICT
    assert r.exact


def test_intensity_exponential_uses_rate_mapping():
    S = IntensityFamily(Exponential(0.5), (0.5, 2.0))
    ref = DFamilyRange(E, (0.25, 1.0))
    for p, q in ((X, Y), (Y, Z), (A, B)):
        assert compare(S, p, q).relation is compare(ref, p, q).relation


def test_product_of_rates_and_truncation():
    S = rate_truncation_scenarios(0.02, 0.04, 5)
    assert isinstance(S, Product)
    safe = StepCashFlow([(0, -1), (1, 1.2)])
    late = StepCashFlow([(0, -1), (6, 3)])
    assert compare(S, safe, late).relation is Relation.GREATER_STRICT
    total = rate_truncation_scenarios(0.03, 0.03, math.inf)
    for p, q in ((safe, late), (X, Y), (A, B)):
        assert compare(total, p, q).relation is not Relation.INCOMPARABLE
    with pytest.raises(ValueError):
        rate_truncation_scenarios(0.05, 0.01, 5)


def test_degenerate_builder_is_undiscounted_truncation():
    S = rate_truncation_scenarios(0.0, 0.0, 1)
    ref = TruncationFamily(Unit(), (1, math.inf))
    p = StepCashFlow([(0, -1), (1, 0.6), (2, 0.6)])
    q = StepCashFlow([(0, -1), (3, 1.5)])
    assert compare(S, p, q).relation is compare(ref, p, q).relation


def test_hull_examples():
    S = Finite((U, CHI))
    h = hull_interval(S, A, B)
    assert h.feasible and (h.lower, h.upper) == (1.0, 2.0)
    assert not compare_convex_hull_finite(S, B, A)
    assert compare_convex_hull_finite(S, A, A)
    assert compare_convex_hull_finite(S, ZERO, A)
    with pytest.raises(TypeError):
        compare_convex_hull_finite(DFamilyRange(E), A, B)


def test_sign_preorder_examples():
    S = Finite((U, CHI, NpvFunctional(Exponential(0.3), label="e")))
    p = StepCashFlow([(0, 1), (2, 1)])
    assert is_in_P_plusplus(p)
    assert sign_compare(S, p, ZERO).relation is Relation.GREATER_STRICT
    assert sign_compare(S, ZERO, negate(p)).relation is Relation.GREATER_STRICT


def test_usury_examples():
    assert usury_classify(StepCashFlow([(0, -1), (1, 1.5)])) is Usury.NON_USURIOUS
    assert usury_classify(StepCashFlow([(0, -1), (1, 1.7)])) is Usury.USURIOUS
    assert usury_classify(StepCashFlow([(0, -1), (2, 2.56)])) is Usury.USURIOUS


def test_scaled_unit_inflows_are_equivalent():
    S = Finite((U, CHI))
    two, one = StepCashFlow([(0, 2)]), StepCashFlow([(0, 1)])
    assert compare(S, two, one).relation is Relation.EQUIVALENT


def test_harness_on_worked_triple():
    rep = axiom_harness(DFamilyRange(E), [X, Y, Z, A, B], offsets=(1, 2))
    assert rep.ok, rep.violations
    assert rep.checked.get("INT_sandwich", 0) > 0
    assert rep.checked.get("singleton_totality", 0) > 0


def _finite_from(alphas):
    return Finite(tuple(NpvFunctional(a, label=f"s{i}") for i, a in enumerate(alphas)))


@given(st.lists(discounts, min_size=2, max_size=5), flows(2, 5), flows(2, 5))
def test_hull_matches_grid_oracle(alphas, x, y):
    S = _finite_from(alphas)
    h = hull_interval(S, x, y)
    assume(not h.boundary)
    fx = [npv_raw(x.times, x.amounts, lambda t, a=a: float(a(t))) for a in alphas]
    fy = [npv_raw(y.times, y.amounts, lambda t, a=a: float(a(t))) for a in alphas]
    assert h.feasible == hull_grid_feasible(fx, fy)


@given(st.lists(discounts, min_size=2, max_size=5), flows(2, 5), flows(2, 5))
def test_hull_refines_raw_ordering(alphas, x, y):
    S = _finite_from(alphas)
    if compare_convex_hull_finite(S, x, y):
        rel = compare(S, x, y).relation
        assert rel.at_least or rel in (Relation.UNDETERMINED, Relation.GREATER_EQ)


@given(st.lists(discounts, min_size=1, max_size=4), flows(), flows())
def test_sign_preorder_is_skew_symmetric(alphas, x, y):
    S = _finite_from(alphas)
    r = sign_compare(S, x, y)
    if r.relation.at_least:
        back = sign_compare(S, negate(y), negate(x)).relation
        assert back.at_least or back is Relation.UNDETERMINED


@given(st.lists(discounts, min_size=1, max_size=4), flows(), flows(), flows())
def test_compare_is_transitive(alphas, x, y, z):
    S = _finite_from(alphas)
    a, b = compare(S, x, y).relation, compare(S, y, z).relation
    if a.at_least and b.at_least:
        c = compare(S, x, z).relation
        assert c.at_least or c is Relation.UNDETERMINED


@given(flows(), flows())
def test_d_family_transitivity_and_flip(x, y):
    S = DFamilyRange(E, (0, 5))
    r, s = compare(S, x, y), compare(S, y, x)
    assert s.relation is r.relation.flipped()


@given(flows(), flows(), st.floats(0.5, 10))
def test_truncation_stability(x, y, tau):
    S = TruncationFamily(Exponential(0.1), (0.5, math.inf))
    if compare(S, x, y).relation.at_least:
        rel = compare(S, truncate(x, tau), truncate(y, tau)).relation
        assert rel.at_least or rel is Relation.UNDETERMINED
