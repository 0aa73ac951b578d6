"""Three projects whose IRRs tell very different stories.

x never needs financing (its NPV is positive at every rate), y has an
ordinary IRR near 44%, and z is only profitable between two rates.  The
rate-range ordering ranks them x > y > z, while the plain IRR cannot rank
x or z at all.
"""

from profitability import DFamilyRange, DomainError, ExponentialFamily, StepCashFlow, acceptance_set, compare
from profitability import natural_extension_rr, possesses_irr

E = ExponentialFamily()
projects = {
    "x": StepCashFlow([(0, 1), (1, -2), (2, 1.1)]),
    "y": StepCashFlow([(0, -1), (1, 2), (2, -0.7)]),
    "z": StepCashFlow([(0, -1), (1, 2.7), (2, -1.8)]),
}

for name, p in projects.items():
    acc = acceptance_set(E, p)
    try:
        ext = natural_extension_rr(E, p)
    except DomainError:
        ext = "outside natural domain"
    print(f"{name}: accepted rates {acc.intervals}, IRR {possesses_irr(E, p)}, extended {ext}")

S = DFamilyRange(E)
for a, b in (("x", "y"), ("y", "z"), ("x", "z")):
    r = compare(S, projects[a], projects[b])
    print(f"{a} vs {b}: {r.relation.value} (witness rate: {r.accepts_x_only})")
