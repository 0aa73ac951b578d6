"""Discount functions and the dominance relations between them.

A discount function ``alpha`` gives the present worth ``alpha(t)`` of one money
unit received at time ``t``.  Every variant here is nonnegative, nonincreasing
and equal to 1 at ``t = 0``.  Variants are immutable dataclasses; evaluation
accepts scalars or numpy arrays.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np

from .results import Verdict

__all__ = [
    "DiscountFunction",
    "Exponential",
    "PowerOfBase",
    "ConstantSensitivity",
    "GeneralizedHyperbolic",
    "CompoundAnnual",
    "Unit",
    "Impatient",
    "Truncated",
    "ChiMix",
    "Intensity",
    "GridSampled",
    "dominance_1",
    "dominance_2",
    "dominance_3",
]

ArrayLike = Union[float, Sequence[float], np.ndarray]

DOMINANCE_TOL = 1e-10
FD_RELATIVE_STEP = 1e-4


class DiscountFunction(ABC):
    """Base class of all discount functions."""

    def __call__(self, t: ArrayLike):
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise ValueError("discount functions are defined for t >= 0")
        out = self._eval(np.atleast_1d(arr))
        if arr.ndim == 0:
            return float(out[0])
        return out.reshape(arr.shape)

    @abstractmethod
    def _eval(self, t: np.ndarray) -> np.ndarray:
        """Values on a 1-d array of nonnegative times."""

    def right_limit_at_zero(self) -> float:
        """``alpha(0+)``."""
        return 1.0

    def support(self) -> Tuple[float, bool]:
        """``(sup, attained)`` describing ``supp = {t : alpha(t) > 0}``.

        The support of a nonincreasing function is an interval starting at 0;
        ``attained`` tells whether its supremum belongs to it.
        """
        return math.inf, False

    def support_supremum(self) -> float:
        return self.support()[0]

    @property
    def strictly_decreasing(self) -> bool:
        return False

    @property
    def differentiable(self) -> bool:
        return False

    def is_impatient(self) -> bool:
        """True when the function vanishes on ``(0, inf)``."""
        return self.right_limit_at_zero() == 0.0

    def check_on_grid(self, grid: ArrayLike, atol: float = 1e-12) -> None:
        """Raise ``ValueError`` if the class invariants fail on ``grid``."""
        g = np.unique(np.asarray(grid, dtype=float))
        v = self(g)
        if abs(self(0.0) - 1.0) > atol:
            raise ValueError(f"{self!r}: value at 0 is {self(0.0)}, expected 1")
        if np.any(v < -atol):
            raise ValueError(f"{self!r}: negative values on grid")
        if np.any(np.diff(v) > atol):
            raise ValueError(f"{self!r}: increases somewhere on grid")


@dataclass(frozen=True)
class Exponential(DiscountFunction):
    """``t -> exp(-rate * t)``."""

    rate: float

    def __post_init__(self):
        _require(self.rate >= 0 and math.isfinite(self.rate), "rate must be finite and >= 0")

    def _eval(self, t):
        return np.exp(-self.rate * t)

    @property
    def strictly_decreasing(self):
        return self.rate > 0

    @property
    def differentiable(self):
        return True


@dataclass(frozen=True)
class PowerOfBase(DiscountFunction):
    """``t -> base(t) ** exponent`` for a strictly decreasing ``base``."""

    base: DiscountFunction
    exponent: float

    def __post_init__(self):
        _require(self.exponent >= 0 and math.isfinite(self.exponent), "exponent must be finite and >= 0")
        _require(self.base.strictly_decreasing, "base of a power discount must be strictly decreasing")

    def _eval(self, t):
        return self.base._eval(t) ** self.exponent

    def right_limit_at_zero(self):
        return self.base.right_limit_at_zero() ** self.exponent

    def support(self):
        if self.exponent == 0:
            return math.inf, False
        return self.base.support()

    @property
    def strictly_decreasing(self):
        return self.exponent > 0

    @property
    def differentiable(self):
        return self.base.differentiable


@dataclass(frozen=True)
class ConstantSensitivity(DiscountFunction):
    """``t -> exp(-rate * t**shape)``."""

    rate: float
    shape: float

    def __post_init__(self):
        _require(self.rate >= 0 and math.isfinite(self.rate), "rate must be finite and >= 0")
        _require(self.shape > 0 and math.isfinite(self.shape), "shape must be positive")

    def _eval(self, t):
        return np.exp(-self.rate * t**self.shape)

    @property
    def strictly_decreasing(self):
        return self.rate > 0

    @property
    def differentiable(self):
        return True


@dataclass(frozen=True)
class GeneralizedHyperbolic(DiscountFunction):
    """``t -> (1 + shape * t) ** (-rate / shape)``."""

    rate: float
    shape: float

    def __post_init__(self):
        _require(self.rate >= 0 and math.isfinite(self.rate), "rate must be finite and >= 0")
        _require(self.shape > 0 and math.isfinite(self.shape), "shape must be positive")

    def _eval(self, t):
        return (1.0 + self.shape * t) ** (-self.rate / self.shape)

    @property
    def strictly_decreasing(self):
        return self.rate > 0

    @property
    def differentiable(self):
        return True


@dataclass(frozen=True)
class CompoundAnnual(DiscountFunction):
    """``t -> (1 + rate) ** (-t)``; e.g. ``rate=0.6`` discounts at 60% per period."""

    rate: float

    def __post_init__(self):
        # negative rates would make the function increasing
        _require(self.rate >= 0 and math.isfinite(self.rate), "compound rate must be finite and >= 0")

    def _eval(self, t):
        return (1.0 + self.rate) ** (-t)

    @property
    def log_rate(self) -> float:
        """Equivalent continuously compounded rate."""
        return math.log1p(self.rate)

    @property
    def strictly_decreasing(self):
        return self.rate > 0

    @property
    def differentiable(self):
        return True


@dataclass(frozen=True)
class Unit(DiscountFunction):
    """No discounting: ``t -> 1``."""

    def _eval(self, t):
        return np.ones_like(t)


@dataclass(frozen=True)
class Impatient(DiscountFunction):
    """Extreme impatience: 1 at ``t = 0`` and 0 afterwards.

    Its NPV functional returns the initial balance ``x(0)``.
    """

    def _eval(self, t):
        return np.where(t == 0.0, 1.0, 0.0)

    def right_limit_at_zero(self):
        return 0.0

    def support(self):
        return 0.0, True


@dataclass(frozen=True)
class Truncated(DiscountFunction):
    """``inner`` cut off after ``horizon`` (on ``[0, horizon]`` or ``[0, horizon)``)."""

    inner: DiscountFunction
    horizon: float
    closed: bool = True

    def __post_init__(self):
        _require(self.horizon > 0, "truncation horizon must be positive")

    def _eval(self, t):
        keep = t <= self.horizon if self.closed else t < self.horizon
        out = np.zeros_like(t)
        if np.any(keep):
            out[keep] = self.inner._eval(t[keep])
        return out

    def right_limit_at_zero(self):
        return self.inner.right_limit_at_zero()

    def support(self):
        sup, attained = self.inner.support()
        if self.horizon < sup:
            return self.horizon, self.closed and self.inner(self.horizon) > 0
        if self.horizon == sup:
            return sup, attained and self.closed
        return sup, attained


@dataclass(frozen=True)
class ChiMix(DiscountFunction):
    """``weight * inner + (1 - weight) * chi`` with ``weight`` in ``[0, 1/inner(0+)]``."""

    inner: DiscountFunction
    weight: float

    def __post_init__(self):
        upper = _reciprocal(self.inner.right_limit_at_zero())
        _require(0.0 <= self.weight <= upper * (1 + 1e-15), f"weight must lie in [0, {upper}]")

    def _eval(self, t):
        return np.where(t == 0.0, 1.0, self.weight * self.inner._eval(t))

    def right_limit_at_zero(self):
        return self.weight * self.inner.right_limit_at_zero()

    def support(self):
        if self.weight == 0:
            return 0.0, True
        return self.inner.support()

    @property
    def differentiable(self):
        return self.weight > 0 and self.inner.differentiable


@dataclass(frozen=True)
class Intensity(DiscountFunction):
    """``t -> inner(t / factor)``: the project runs ``factor`` times as fast."""

    inner: DiscountFunction
    factor: float

    def __post_init__(self):
        _require(self.factor > 0 and math.isfinite(self.factor), "intensity factor must be positive")

    def _eval(self, t):
        return self.inner._eval(t / self.factor)

    def right_limit_at_zero(self):
        return self.inner.right_limit_at_zero()

    def support(self):
        sup, attained = self.inner.support()
        return sup * self.factor, attained

    @property
    def strictly_decreasing(self):
        return self.inner.strictly_decreasing

    @property
    def differentiable(self):
        return self.inner.differentiable


@dataclass(frozen=True)
class GridSampled(DiscountFunction):
    """Right-continuous step interpolation of sampled values.

    ``times`` must start at 0 and ``values`` at 1.  Evaluation past the last
    sample raises ``ValueError`` rather than extrapolating.
    """

    times: Tuple[float, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        ts, vs = np.asarray(self.times), np.asarray(self.values)
        _require(len(ts) == len(vs) and len(ts) > 0, "times and values must be nonempty and equally long")
        _require(ts[0] == 0.0 and np.all(np.diff(ts) > 0), "times must start at 0 and increase strictly")
        _require(vs[0] == 1.0, "value at t=0 must be 1")
        _require(np.all(vs >= 0) and np.all(np.diff(vs) <= 0), "values must be nonnegative and nonincreasing")

    def _eval(self, t):
        ts = np.asarray(self.times)
        if np.any(t > ts[-1]):
            raise ValueError(f"time beyond the sampled grid (last sample at {ts[-1]})")
        idx = np.searchsorted(ts, t, side="right") - 1
        return np.asarray(self.values)[idx]

    def right_limit_at_zero(self):
        return self.values[0]

    def support(self):
        for t, v in zip(self.times, self.values):
            if v == 0.0:
                return t, False
        return math.inf, False


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def _reciprocal(v: float) -> float:
    return math.inf if v == 0 else 1.0 / v


# -- dominance relations ----------------------------------------------------

_SAME_SHAPE_FAMILIES = (ConstantSensitivity, GeneralizedHyperbolic)


def _rate_order(alpha: DiscountFunction, beta: DiscountFunction):
    """Compare two members of the same one-parameter family by rate.

    Returns True/False when ``alpha`` and ``beta`` come from a common
    exponential-type family (ratio ``alpha/beta`` then moves monotonically
    with the rate gap), ``None`` otherwise.
    """
    if isinstance(alpha, Exponential) and isinstance(beta, Exponential):
        return alpha.rate <= beta.rate
    if isinstance(alpha, CompoundAnnual) and isinstance(beta, CompoundAnnual):
        return alpha.rate <= beta.rate
    for cls in _SAME_SHAPE_FAMILIES:
        if isinstance(alpha, cls) and isinstance(beta, cls) and alpha.shape == beta.shape:
            return alpha.rate <= beta.rate
    return None


def _nondecreasing(seq: np.ndarray, tol: float) -> Verdict:
    steps = np.diff(seq)
    if steps.size == 0 or np.all(steps >= 0):
        return Verdict.TRUE
    if np.any(steps < -tol):
        return Verdict.FALSE
    return Verdict.UNDETERMINED


def dominance_1(alpha: DiscountFunction, beta: DiscountFunction, grid: ArrayLike, tol: float = DOMINANCE_TOL) -> Verdict:
    """``alpha >= beta`` pointwise (discounting strength), decided on ``grid``."""
    g = _grid(grid)
    if alpha == beta or isinstance(alpha, Unit) or isinstance(beta, Impatient):
        return Verdict.TRUE
    quick = _rate_order(alpha, beta)
    if quick is not None:
        return Verdict.of(quick)
    gap = alpha(g) - beta(g)
    if np.all(gap >= 0):
        return Verdict.TRUE
    if np.any(gap < -tol):
        return Verdict.FALSE
    return Verdict.UNDETERMINED


def dominance_2(alpha: DiscountFunction, beta: DiscountFunction, grid: ArrayLike, tol: float = DOMINANCE_TOL) -> Verdict:
    """Patience ordering: equal supports and ``alpha/beta`` nondecreasing."""
    g = _grid(grid)
    if alpha == beta:
        return Verdict.TRUE
    if alpha.support() != beta.support():
        return Verdict.FALSE
    quick = _rate_order(alpha, beta)
    if quick is not None:
        return Verdict.of(quick)
    b = beta(g)
    inside = b > 0
    ratio = alpha(g[inside]) / b[inside]
    return _nondecreasing(ratio, tol)


def _fd_derivative(f: DiscountFunction, t: np.ndarray, h: float) -> np.ndarray:
    central = t >= h
    lo = np.where(central, t - h, t)
    hi = t + h
    width = np.where(central, 2 * h, h)
    return (f(hi) - f(lo)) / width


def dominance_3(
    alpha: DiscountFunction,
    beta: DiscountFunction,
    grid: ArrayLike,
    tol: float = DOMINANCE_TOL,
    step: float | None = None,
) -> Verdict:
    """Relative decreasing impatience: ``alpha'/beta'`` nondecreasing.

    Derivatives are central finite differences with step ``step`` (default
    ``1e-4`` times the grid span).  Consecutive ratios closer than ``tol``
    cannot be told apart from a flat stretch and give ``UNDETERMINED``.
    """
    for f in (alpha, beta):
        if not f.differentiable:
            raise ValueError(f"{f!r} is not differentiable; the relation needs negative derivatives")
    g = _grid(grid)
    g = g[g > 0]
    if g.size == 0:
        raise ValueError("grid needs positive times")
    if alpha == beta:
        return Verdict.TRUE
    if isinstance(alpha, Exponential) and isinstance(beta, Exponential) and alpha.rate > 0 and beta.rate > 0:
        return Verdict.of(alpha.rate <= beta.rate)
    span = g[-1] - g[0] if g.size > 1 else g[0]
    h = step if step is not None else FD_RELATIVE_STEP * span
    da = _fd_derivative(alpha, g, h)
    db = _fd_derivative(beta, g, h)
    if np.any(da >= 0) or np.any(db >= 0):
        raise ValueError("derivatives must be negative on the grid")
    steps = np.diff(da / db)
    if np.any(steps < -tol):
        return Verdict.FALSE
    if np.all(steps > tol):
        return Verdict.TRUE
    return Verdict.UNDETERMINED


def _grid(grid: ArrayLike) -> np.ndarray:
    g = np.unique(np.asarray(grid, dtype=float))
    if g.size == 0:
        raise ValueError("grid must be nonempty")
    return g
