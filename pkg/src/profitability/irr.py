"""Internal rate of return with respect to a family of discount functions.

Every family here is a power family ``alpha_lam(t) = exp(-lam * clock(t))``
with a strictly increasing clock, ``clock(0) = 0``.  The NPV profile of a
project with transactions ``(t_k, a_k)`` is then the exponential sum

    g(lam) = sum_k a_k exp(-lam * clock(t_k)),

and its zeros can be isolated exactly: multiplying by ``exp(lam * clock(t_0))``
and differentiating removes one term, so the critical points of ``g`` come
from a shorter sum of the same kind.  Between consecutive critical points
``g`` is monotone and has at most one zero, located by bisection; zeros at
critical points are tangencies.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .cashflow import StepCashFlow
from .discount import (
    ConstantSensitivity,
    DiscountFunction,
    Exponential,
    GeneralizedHyperbolic,
    PowerOfBase,
)
from .results import DomainError, Verdict

__all__ = [
    "DFamily",
    "ExponentialFamily",
    "PowerFamily",
    "ConstantSensitivityFamily",
    "GeneralizedHyperbolicFamily",
    "AcceptanceSet",
    "g_eval",
    "g_derivative",
    "acceptance_set",
    "possesses_irr",
    "rr_closed_form",
    "natural_extension_rr",
    "in_natural_domain",
    "is_regular",
    "check_d_family",
    "certified_lambda_max",
]

DEFAULT_TOL = 1e-9


class DFamily(ABC):
    """A one-parameter family ``lam -> alpha_lam`` of positive discount functions."""

    @abstractmethod
    def clock(self, t: np.ndarray) -> np.ndarray:
        """``-log alpha_1(t)``; strictly increasing, zero at ``t = 0``."""

    @abstractmethod
    def member(self, lam: float) -> DiscountFunction:
        ...

    def discount(self, lam: float, t) -> np.ndarray:
        return np.exp(-lam * self.clock(np.asarray(t, dtype=float)))


@dataclass(frozen=True)
class ExponentialFamily(DFamily):
    def clock(self, t):
        return np.asarray(t, dtype=float)

    def member(self, lam):
        return Exponential(lam)


@dataclass(frozen=True)
class ConstantSensitivityFamily(DFamily):
    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("shape must be positive")

    def clock(self, t):
        return np.asarray(t, dtype=float) ** self.beta

    def member(self, lam):
        return ConstantSensitivity(lam, self.beta)


@dataclass(frozen=True)
class GeneralizedHyperbolicFamily(DFamily):
    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("shape must be positive")

    def clock(self, t):
        return np.log1p(self.beta * np.asarray(t, dtype=float)) / self.beta

    def member(self, lam):
        return GeneralizedHyperbolic(lam, self.beta)


@dataclass(frozen=True)
class PowerFamily(DFamily):
    """``lam -> base ** lam`` for a positive, strictly decreasing ``base``."""

    base: DiscountFunction

    def __post_init__(self):
        if not self.base.strictly_decreasing:
            raise ValueError("base of a power family must be strictly decreasing")
        if self.base.support() != (math.inf, False):
            raise ValueError("base of a power family must be positive everywhere")

    def clock(self, t):
        v = self.base(np.asarray(t, dtype=float))
        if np.any(v <= 0):
            raise ValueError("base discount vanishes; the family is not positive")
        return -np.log(v)

    def member(self, lam):
        return PowerOfBase(self.base, lam)


# -- exponential sums ---------------------------------------------------------


class _ExpSum:
    """``f(lam) = sum c_k exp(-lam d_k)`` with ``0 = d_0 < d_1 < ...``."""

    __slots__ = ("c", "d")

    def __init__(self, c: np.ndarray, d: np.ndarray):
        self.c = np.asarray(c, dtype=float)
        self.d = np.asarray(d, dtype=float) - float(d[0])

    def terms(self, lam: float) -> np.ndarray:
        return self.c * np.exp(-lam * self.d)

    def __call__(self, lam: float) -> float:
        return math.fsum(self.terms(lam))

    def magnitude(self, lam: float) -> float:
        return math.fsum(np.abs(self.terms(lam)))

    def derivative(self) -> "_ExpSum":
        """Same zeros as ``d/dlam`` of ``f`` (up to a positive factor)."""
        return _ExpSum(-self.c[1:] * self.d[1:], self.d[1:])

    def dominance_certified(self, lam: float) -> bool:
        """Leading term outweighs the rest at ``lam`` and hence for all larger ``lam``."""
        return abs(self.c[0]) > math.fsum(np.abs(self.c[1:]) * np.exp(-lam * self.d[1:]))


def _bisect(f: _ExpSum, a: float, b: float, fa: float) -> float:
    # run to machine precision; bisection is cheap next to the recursion
    while True:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m


def _zeros(f: _ExpSum, lo: float, hi: float, xtol: float, rtol: float) -> List[float]:
    """All zeros of ``f`` on ``[lo, hi]``, tangential ones included."""
    if f.c.size <= 1:
        return []
    crit = _zeros(f.derivative(), lo, hi, xtol, rtol)
    pts = sorted({lo, hi, *crit})
    vals = [f(p) for p in pts]
    near = [abs(v) <= rtol * f.magnitude(p) for p, v in zip(pts, vals)]
    found = [p for p, n in zip(pts, near) if n]
    for i in range(len(pts) - 1):
        if near[i] or near[i + 1]:
            continue
        if (vals[i] > 0) != (vals[i + 1] > 0):
            found.append(_bisect(f, pts[i], pts[i + 1], vals[i]))
    found.sort()
    merged: List[float] = []
    for z in found:
        if not merged or z - merged[-1] > xtol:
            merged.append(z)
    return merged


def _profile(A: DFamily, x: StepCashFlow) -> _ExpSum:
    d = A.clock(np.asarray(x.times))
    return _ExpSum(np.asarray(x.amounts), d)


def certified_lambda_max(A: DFamily, x: StepCashFlow, start: float = 1.0) -> float:
    """Smallest ``start * 2**k`` past which ``g`` keeps the sign of its leading term."""
    if len(x) <= 1:
        return start
    f = _profile(A, x)
    lam = start
    while not f.dominance_certified(lam):
        lam *= 2.0
        if lam > 1e300:
            raise ArithmeticError("could not certify the tail of the NPV profile")
    return lam


# -- public API ---------------------------------------------------------------


@dataclass(frozen=True)
class AcceptanceSet:
    """``{lam >= 0 : g(lam) >= 0}`` as a finite union of closed intervals.

    Degenerate intervals ``(r, r)`` are isolated acceptance points.
    ``tangencies`` lists interior zeros where ``g`` touches zero from above;
    ``undetermined`` is set when some sign decision fell within tolerance.
    """

    intervals: Tuple[Tuple[float, float], ...]
    roots: Tuple[float, ...] = ()
    tangencies: Tuple[float, ...] = ()
    tol: float = DEFAULT_TOL
    lambda_max: float = math.inf
    undetermined: bool = False

    @property
    def isolated_points(self) -> Tuple[float, ...]:
        return tuple(lo for lo, hi in self.intervals if lo == hi)

    def is_empty(self) -> bool:
        return not self.intervals

    def is_everything(self) -> bool:
        return self.intervals == ((0.0, math.inf),)

    def supremum(self) -> float:
        return self.intervals[-1][1] if self.intervals else -math.inf

    def __contains__(self, lam: float) -> bool:
        return any(lo <= lam <= hi for lo, hi in self.intervals)

    def restrict(self, lo: float, hi: float) -> Tuple[Tuple[float, float], ...]:
        out = []
        for a, b in self.intervals:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 <= b2:
                out.append((a2, b2))
        return tuple(out)


def g_eval(A: DFamily, x: StepCashFlow, lam: float) -> float:
    """NPV of ``x`` under the family member with rate ``lam`` (``inf`` gives ``x(0)``)."""
    if lam < 0:
        raise ValueError("rate must be >= 0")
    if math.isinf(lam):
        return x.initial
    if not x:
        return 0.0
    return math.fsum(np.asarray(x.amounts) * A.discount(lam, x.times))


def g_derivative(A: DFamily, x: StepCashFlow, lam: float) -> float:
    if not x:
        return 0.0
    d = A.clock(np.asarray(x.times))
    return math.fsum(-np.asarray(x.amounts) * d * np.exp(-lam * d))


def acceptance_set(
    A: DFamily,
    x: StepCashFlow,
    lambda_max: Optional[float] = None,
    tol: float = DEFAULT_TOL,
) -> AcceptanceSet:
    """Isolate the zeros of the NPV profile and return where it is nonnegative.

    ``lambda_max`` is the scan horizon; it is enlarged automatically until the
    leading transaction provably dominates the profile beyond it.  ``tol``
    is the bisection width in ``lam`` and the relative size below which a
    profile value counts as zero.
    """
    if not x:
        return AcceptanceSet(((0.0, math.inf),), tol=tol)
    f = _profile(A, x)
    certified = certified_lambda_max(A, x)
    hi = certified if lambda_max is None else max(float(lambda_max), certified)
    zeros = _zeros(f, 0.0, hi, tol, tol)

    bounds = sorted({0.0, hi, *zeros})
    undetermined = False
    seg_signs = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        m = 0.5 * (a + b)
        v = f(m)
        if abs(v) <= tol * f.magnitude(m):
            undetermined = True
        seg_signs.append(v > 0)
    tail_positive = f.c[0] > 0
    zero_set = set(zeros)

    # walk point, segment, point, ..., last point, tail
    pieces: List[Tuple[float, float, bool]] = []
    for i, p in enumerate(bounds):
        left = seg_signs[i - 1] if i > 0 else False
        right = seg_signs[i] if i < len(seg_signs) else tail_positive
        pieces.append((p, p, p in zero_set or left or right))
        if i < len(seg_signs):
            pieces.append((p, bounds[i + 1], seg_signs[i]))
    pieces.append((hi, math.inf, tail_positive))

    intervals: List[List[float]] = []
    open_run = False
    for a, b, acc in pieces:
        if acc:
            if open_run:
                intervals[-1][1] = b
            else:
                intervals.append([a, b])
            open_run = True
        else:
            open_run = False

    tangencies = []
    for i, p in enumerate(bounds):
        if p in zero_set and 0 < i < len(seg_signs):
            if seg_signs[i - 1] and seg_signs[i]:
                tangencies.append(p)
    return AcceptanceSet(
        intervals=tuple((a, b) for a, b in intervals),
        roots=tuple(zeros),
        tangencies=tuple(tangencies),
        tol=tol,
        lambda_max=hi,
        undetermined=undetermined,
    )


def possesses_irr(
    A: DFamily, x: StepCashFlow, lambda_max: Optional[float] = None, tol: float = DEFAULT_TOL
) -> Optional[float]:
    """The IRR when the profile is positive before a single root and negative after it."""
    acc = acceptance_set(A, x, lambda_max, tol)
    if acc.undetermined or acc.tangencies or len(acc.intervals) != 1 or len(acc.roots) != 1:
        return None
    lo, hi = acc.intervals[0]
    if lo != 0.0 or math.isinf(hi) or acc.roots[0] != hi:
        return None
    return hi


def rr_closed_form(A: DFamily, x: StepCashFlow) -> float:
    """Rate of return of ``-a 1_t + b 1_tau`` (``0 < a <= b``, ``t < tau``) in closed form."""
    if len(x) != 2:
        raise ValueError("closed-form rate of return needs exactly two transactions")
    (t, a), (tau, b) = x
    if not (a < 0 < b and -a <= b):
        raise ValueError("expected an outlay followed by a payoff at least as large")
    ct, ctau = A.clock(np.asarray([t, tau]))
    return math.log(b / -a) / (ctau - ct)


def natural_extension_rr(
    A: DFamily, x: StepCashFlow, lambda_max: Optional[float] = None, tol: float = DEFAULT_TOL
) -> float:
    """Supremum of the acceptance set; ``-inf`` when it is empty."""
    acc = acceptance_set(A, x, lambda_max, tol)
    if not _natural_shape(acc):
        raise DomainError("the NPV profile is not nonnegative-then-negative; outside the natural domain")
    return acc.supremum()


def _natural_shape(acc: AcceptanceSet) -> bool:
    return acc.is_empty() or (len(acc.intervals) == 1 and acc.intervals[0][0] == 0.0)


def in_natural_domain(
    A: DFamily, x: StepCashFlow, lambda_max: Optional[float] = None, tol: float = DEFAULT_TOL
) -> bool:
    return _natural_shape(acceptance_set(A, x, lambda_max, tol))


def is_regular(
    A: DFamily, x: StepCashFlow, lambda_max: Optional[float] = None, tol: float = DEFAULT_TOL
) -> Verdict:
    """Whether the acceptance set is the closure of its interior.

    ``FALSE`` when an isolated acceptance point was found.  ``TRUE`` when the
    sufficient conditions hold with margin: nonzero initial and final
    balances and a nonvanishing derivative at every positive root.
    """
    acc = acceptance_set(A, x, lambda_max, tol)
    if acc.isolated_points:
        return Verdict.FALSE
    if acc.undetermined or not x:
        return Verdict.UNDETERMINED
    size = float(np.sum(np.abs(x.amounts)))
    if abs(x.initial) <= tol * size or abs(x.total) <= tol * size:
        return Verdict.UNDETERMINED
    d = A.clock(np.asarray(x.times))
    for r in acc.roots:
        if r == 0.0:
            continue
        slope_scale = math.fsum(np.abs(np.asarray(x.amounts)) * d * np.exp(-r * d))
        if abs(g_derivative(A, x, r)) <= tol * slope_scale:
            return Verdict.UNDETERMINED
    return Verdict.TRUE


def check_d_family(A: DFamily, triples: Sequence[Tuple[float, float, float, float]]) -> bool:
    """Check positivity and strict decrease of ``lam -> alpha(tau)/alpha(t)`` on samples.

    Each sample is ``(t, tau, lam1, lam2)`` with ``t < tau`` and ``lam1 < lam2``.
    """
    for t, tau, l1, l2 in triples:
        if not (0 <= t < tau and 0 <= l1 < l2):
            raise ValueError(f"bad sample {(t, tau, l1, l2)}")
        r1 = A.discount(l1, tau) / A.discount(l1, t)
        r2 = A.discount(l2, tau) / A.discount(l2, t)
        if not (A.discount(l2, tau) > 0 and r2 < r1 <= 1.0):
            return False
    return True
