"""Ranking projects when both the rate and the horizon are uncertain.

Rates lie between 2% and 4% per period and the project may be cut off at
any time from period 5 onwards.  A quick payback project beats a larger
but later one, even though the later one has the higher plain NPV.
"""

from profitability import StepCashFlow, compare, npv, rate_truncation_scenarios
from profitability.discount import CompoundAnnual

S = rate_truncation_scenarios(0.02, 0.04, 5)
quick = StepCashFlow([(0, -1), (1, 0.6), (2, 0.6)])
late = StepCashFlow([(0, -1), (3, 0.2), (6, 1.5)])

for name, p in (("quick", quick), ("late", late)):
    print(f"{name}: NPV at 3% = {npv(CompoundAnnual(0.03), p):.4f}")
r = compare(S, quick, late)
print(f"quick vs late: {r.relation.value}; only quick survives under {r.accepts_x_only}")
