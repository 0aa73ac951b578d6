"""NPV functionals induced by discount functions.

On a step cash flow the Stieltjes integral ``x(0) + int alpha dx`` collapses
to the discount-weighted sum of transactions, which is what every function
here evaluates (with exactly rounded summation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cashflow import StepCashFlow
from .discount import ChiMix, DiscountFunction, Impatient, Intensity, Truncated

__all__ = [
    "NpvFunctional",
    "npv",
    "npv_truncated",
    "npv_left_limit",
    "npv_mixed",
    "h_gamma",
    "intensity_npv",
    "truncated_functional",
    "reduction_functional",
    "intensity_functional",
    "impatient_functional",
]


def _weighted_sum(alpha: DiscountFunction, x: StepCashFlow, keep=None) -> float:
    if not x:
        return 0.0
    times = np.asarray(x.times)
    amounts = np.asarray(x.amounts)
    if keep is not None:
        mask = keep(times)
        times, amounts = times[mask], amounts[mask]
        if times.size == 0:
            return 0.0
    return math.fsum(amounts * alpha(times))


@dataclass(frozen=True)
class NpvFunctional:
    """``F(x) = x(0) + int alpha dx`` for a discount function ``alpha``."""

    discount: DiscountFunction
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", repr(self.discount))

    def __call__(self, x: StepCashFlow) -> float:
        return _weighted_sum(self.discount, x)

    def scale(self, x: StepCashFlow) -> float:
        """Sum of absolute discounted terms; the natural size of ``F(x)``'s rounding error."""
        if not x:
            return 0.0
        return math.fsum(np.abs(np.asarray(x.amounts)) * self.discount(np.asarray(x.times)))


def npv(F: NpvFunctional | DiscountFunction, x: StepCashFlow) -> float:
    if isinstance(F, DiscountFunction):
        return _weighted_sum(F, x)
    return F(x)


def npv_truncated(alpha: DiscountFunction, tau: float, x: StepCashFlow) -> float:
    """NPV of ``x`` stopped at ``tau``: transactions with ``t <= tau`` only."""
    if not tau > 0:
        raise ValueError("truncation time must be positive")
    return _weighted_sum(alpha, x, keep=lambda t: t <= tau)


def npv_left_limit(alpha: DiscountFunction, tau: float, x: StepCashFlow) -> float:
    """Limit of the truncated NPV from the left at ``tau`` (excludes the jump at ``tau``)."""
    if not tau > 0:
        raise ValueError("truncation time must be positive")
    return _weighted_sum(alpha, x, keep=lambda t: t < tau)


def npv_mixed(alpha: DiscountFunction, tau: float, lam: float, x: StepCashFlow) -> float:
    """``lam * G_tau(x) + (1 - lam) * G_tau-(x)``."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("mixing weight must lie in [0, 1]")
    left = npv_left_limit(alpha, tau, x)
    # written around the left limit so that a missing jump gives exactly G_tau
    return left + lam * (npv_truncated(alpha, tau, x) - left)


def h_gamma(alpha: DiscountFunction, gamma: float, x: StepCashFlow) -> float:
    """NPV under ``gamma * alpha + (1 - gamma) * chi``: ``x(0) + gamma (F(x) - x(0))``.

    ``gamma`` may exceed 1 up to ``1/alpha(0+)``.
    """
    upper = math.inf if alpha.right_limit_at_zero() == 0 else 1.0 / alpha.right_limit_at_zero()
    if not 0.0 <= gamma <= upper:
        raise ValueError(f"gamma must lie in [0, {upper}], got {gamma!r}")
    x0 = x.initial
    return x0 + gamma * (_weighted_sum(alpha, x) - x0)


def intensity_npv(alpha: DiscountFunction, lam: float, x: StepCashFlow) -> float:
    """Value of ``x`` carried out ``lam`` times as fast: ``sum a_k alpha(t_k / lam)``."""
    if not lam > 0:
        raise ValueError("intensity must be positive")
    return _weighted_sum(Intensity(alpha, lam), x)


def truncated_functional(alpha: DiscountFunction, tau: float) -> NpvFunctional:
    return NpvFunctional(Truncated(alpha, tau, closed=True), label=f"G[tau={tau:g}]")


def reduction_functional(alpha: DiscountFunction, gamma: float) -> NpvFunctional:
    return NpvFunctional(ChiMix(alpha, gamma), label=f"H[gamma={gamma:g}]")


def intensity_functional(alpha: DiscountFunction, lam: float) -> NpvFunctional:
    return NpvFunctional(Intensity(alpha, lam), label=f"U[lambda={lam:g}]")


def impatient_functional() -> NpvFunctional:
    return NpvFunctional(Impatient(), label="chi")
