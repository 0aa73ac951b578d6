"""Payback periods: DPP, the refined DPP ``(tau, lambda)`` and the interpolated DPP*.

For a step cash flow ``tau -> G_tau(x)`` (the NPV of ``x`` stopped at ``tau``)
is itself a step function that only moves at transaction times, so every
possession question is an exact scan over those times.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .cashflow import StepCashFlow
from .discount import DiscountFunction, Impatient, Unit
from .results import BoundaryWarning, DomainError, Relation
from .valuation import h_gamma, npv

__all__ = [
    "RefinedDpp",
    "DppDomainClass",
    "truncated_profile",
    "dpp",
    "payback_period",
    "refined_dpp",
    "dpp_star",
    "classify_dpp_domain",
    "rdpp_natural_extension",
    "lex_compare_refined",
    "min_recovery_time",
]


@dataclass(frozen=True)
class RefinedDpp:
    """``G_{tau, lam}(x) = 0`` with ``lam`` the least such weight."""

    tau: float
    lam: float

    def key(self) -> Tuple[float, float]:
        return self.tau, self.lam


class DppDomainClass(enum.Enum):
    QMinus = "q_minus"
    QPossesses = "q_possesses"
    QPlus = "q_plus"
    Outside = "outside"


def truncated_profile(alpha: DiscountFunction, x: StepCashFlow) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Piece starts, ``G`` on each piece and the left limit ``G_{tau-}`` at each start.

    Piece 0 is ``[0, p_1)`` with value ``x(0)``; piece ``j`` starts at the
    ``j``-th positive transaction time.
    """
    starts = [0.0]
    running = [x.initial]
    values = [x.initial]
    left = [x.initial]
    for t, a in x:
        if t == 0.0:
            continue
        left.append(values[-1])
        running.append(a * float(alpha(t)))
        starts.append(t)
        values.append(math.fsum(running))
    return np.array(starts), np.array(values), np.array(left)


def _possession_index(values: np.ndarray) -> Optional[int]:
    """``j >= 1`` with ``values[:j] < 0 <= values[j:]``."""
    neg = values < 0
    if not neg[0]:
        return None
    j = int(np.argmin(neg))  # first nonnegative piece
    if neg[j] or np.any(neg[j:]):
        return None
    return j


def _warn_if_boundary(values: np.ndarray, scale: float, tol: float) -> None:
    if np.any((values != 0) & (np.abs(values) <= tol * scale)):
        warnings.warn("payback decision taken on a balance within tolerance of zero", BoundaryWarning, stacklevel=3)


def dpp(alpha: DiscountFunction, x: StepCashFlow, tol: float = 1e-9) -> Optional[float]:
    """First time after which the discounted balance stays nonnegative.

    Absent unless the balance is negative on ``(0, tau)`` and nonnegative
    on ``[tau, inf)``; in particular ``x(0) >= 0`` never possesses a DPP.
    """
    if not x:
        return None
    starts, values, _ = truncated_profile(alpha, x)
    _warn_if_boundary(values, float(np.sum(np.abs(x.amounts))), tol)
    j = _possession_index(values)
    return None if j is None else float(starts[j])


def payback_period(x: StepCashFlow) -> Optional[float]:
    """Undiscounted payback period."""
    return dpp(Unit(), x)


def refined_dpp(alpha: DiscountFunction, x: StepCashFlow, tol: float = 1e-9) -> Optional[RefinedDpp]:
    if not x:
        return None
    starts, values, left = truncated_profile(alpha, x)
    _warn_if_boundary(values, float(np.sum(np.abs(x.amounts))), tol)
    j = _possession_index(values)
    if j is None:
        return None
    g_minus, g_tau = float(left[j]), float(values[j])
    lam = g_minus / (g_minus - g_tau)
    return RefinedDpp(float(starts[j]), min(max(lam, 0.0), 1.0))


def dpp_star(alpha: DiscountFunction, x: StepCashFlow, tol: float = 1e-9) -> Optional[float]:
    """``tau - 1 + lam`` for projects with whole-number transaction times."""
    if not x.is_discrete():
        raise ValueError("interpolated payback needs whole-number transaction times")
    r = refined_dpp(alpha, x, tol)
    return None if r is None else r.tau - 1.0 + r.lam


def classify_dpp_domain(alpha: DiscountFunction, x: StepCashFlow, tol: float = 1e-9) -> DppDomainClass:
    """Which branch of the extended reciprocal payback applies to ``x``."""
    if isinstance(alpha, Impatient) or alpha.is_impatient():
        raise ValueError("the impatient discount function has no payback structure")
    if not x:
        values = np.array([0.0])
    else:
        _, values, _ = truncated_profile(alpha, x)
    if np.all(values < 0):
        return DppDomainClass.QMinus
    if _possession_index(values) is not None:
        return DppDomainClass.QPossesses
    if np.all(values >= 0) and h_gamma(alpha, 1.0 / alpha.right_limit_at_zero(), x) >= 0:
        return DppDomainClass.QPlus
    return DppDomainClass.Outside


def rdpp_natural_extension(alpha: DiscountFunction, x: StepCashFlow, tol: float = 1e-9) -> float:
    """Extended reciprocal payback: a utility level on all of the natural domain.

    Never-recovering projects score ``sup{g in [alpha(0+), 1] : H_{1/g}(x) >= 0} - 1``
    (``-inf`` when that set is empty), payback projects score ``1/DPP`` and
    projects that are never under water score ``+inf``.
    """
    cls = classify_dpp_domain(alpha, x, tol)
    if cls is DppDomainClass.QPlus:
        return math.inf
    if cls is DppDomainClass.QPossesses:
        return 1.0 / dpp(alpha, x, tol)
    if cls is DppDomainClass.Outside:
        raise DomainError("discounted balance changes sign more than once; outside the natural domain")
    x0 = x.initial
    # x0 < 0 here; H_{1/g}(x) >= 0  <=>  g <= (F - x0) / (-x0)
    c = (npv(alpha, x) - x0) / -x0
    lower = alpha.right_limit_at_zero()
    if c < lower:
        return -math.inf
    return min(c, 1.0) - 1.0


def lex_compare_refined(alpha: DiscountFunction, x: StepCashFlow, y: StepCashFlow, tol: float = 1e-9) -> Relation:
    """Order by refined payback: the lexicographically smaller ``(tau, lam)`` is more profitable."""
    rx, ry = refined_dpp(alpha, x, tol), refined_dpp(alpha, y, tol)
    if rx is None or ry is None:
        return Relation.NOT_APPLICABLE
    if rx.key() == ry.key():
        return Relation.EQUIVALENT
    return Relation.GREATER_STRICT if rx.key() < ry.key() else Relation.LESS_STRICT


def min_recovery_time(alpha: DiscountFunction, x: StepCashFlow) -> Optional[float]:
    """First time the discounted balance is nonnegative, ignoring later dips.

    Diagnostic only: it does not respect the profitability axioms and is
    not offered as a metric.
    """
    if not x:
        return None
    starts, values, _ = truncated_profile(alpha, x)
    if values[0] >= 0:
        return None
    hits = np.flatnonzero(values >= 0)
    return float(starts[hits[0]]) if hits.size else None
