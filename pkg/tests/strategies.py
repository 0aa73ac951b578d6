"""Hypothesis strategies for projects and discount functions."""

import math

from hypothesis import strategies as st

from profitability import (
    CompoundAnnual,
    ConstantSensitivity,
    Exponential,
    GeneralizedHyperbolic,
    StepCashFlow,
    Unit,
)

amounts = st.floats(-10, 10, allow_nan=False).filter(lambda a: abs(a) > 1e-3)
# dates on a 0.001 grid; subnormal time gaps are not meaningful projects
times = st.integers(0, 10_000).map(lambda k: k / 1000)
whole_times = st.integers(0, 10).map(float)


def flows(min_size=1, max_size=6, time_strategy=times):
    pairs = st.lists(st.tuples(time_strategy, amounts), min_size=min_size, max_size=max_size)
    return pairs.map(StepCashFlow).filter(bool)


discounts = st.one_of(
    st.just(Unit()),
    st.floats(0, 1).map(Exponential),
    st.floats(0, 1).map(CompoundAnnual),
    st.tuples(st.floats(0, 1), st.floats(0.2, 3)).map(lambda p: ConstantSensitivity(*p)),
    st.tuples(st.floats(0, 1), st.floats(0.2, 3)).map(lambda p: GeneralizedHyperbolic(*p)),
)


def investment(draw_rate):
    """``-1`` now and ``exp(r)`` one period later: IRR ``r`` under the exponential family."""
    return StepCashFlow([(0, -1.0), (1, math.exp(draw_rate))])


def paybacks(time_strategy=times):
    """An outlay at 0 followed by inflows; the balance rises monotonically."""
    later = time_strategy.filter(lambda t: t > 0)
    inflows = st.lists(st.tuples(later, st.floats(0.05, 5)), min_size=1, max_size=5)
    return st.tuples(st.floats(0.1, 5), inflows).map(lambda p: StepCashFlow([(0.0, -p[0]), *p[1]]))
