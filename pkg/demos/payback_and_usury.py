"""Payback refinements and the 60% usury rule on small examples."""

from profitability import StepCashFlow, Unit, dpp, dpp_star, rdpp_natural_extension, refined_dpp, usury_classify

w = StepCashFlow([(0, -1), (1, 0.6), (2, 0.6)])
r = refined_dpp(Unit(), w)
print(f"payback {dpp(Unit(), w)}, refined (tau={r.tau}, lambda={r.lam:.4f}), interpolated {dpp_star(Unit(), w):.4f}")
print(f"extended reciprocal payback: {rdpp_natural_extension(Unit(), w)}")

for a, t in ((1.5, 1), (1.7, 1), (2.56, 2)):
    loan = StepCashFlow([(0, -1), (t, a)])
    print(f"lend 1, get {a} at t={t}: {usury_classify(loan).value}")
