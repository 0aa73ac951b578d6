"""Profitability index, ratio index and their natural extensions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .cashflow import StepCashFlow
from .discount import DiscountFunction
from .results import DomainError
from .valuation import NpvFunctional

__all__ = [
    "TildeBounds",
    "pi",
    "ri",
    "undiscounted_pi_extension",
    "default_grid",
    "tilde_bounds",
    "tilde_values",
    "ri_natural_extension",
]


def pi(F: NpvFunctional, x: StepCashFlow) -> Optional[float]:
    """``(F(x) - x(0)) / -x(0)`` for projects with an initial outlay and ``F(x) >= 0``."""
    x0 = x.initial
    fx = F(x)
    if not (x0 < 0 and fx >= 0):
        return None
    return (fx - x0) / -x0


def ri(F: NpvFunctional, G: NpvFunctional, x: StepCashFlow) -> Optional[float]:
    """``1 - F(x)/G(x)`` where ``F(x) >= 0 > G(x)``."""
    if F == G:
        raise ValueError("ratio index needs two distinct functionals")
    fx, gx = F(x), G(x)
    if not (fx >= 0 and gx < 0):
        return None
    return 1.0 - fx / gx


def undiscounted_pi_extension(x: StepCashFlow) -> float:
    """Undiscounted profitability index extended to every project it can rank.

    >>> undiscounted_pi_extension(StepCashFlow([(0, -1), (2, 4)]))
    4.0
    """
    x0, total = x.initial, x.total
    if x0 < 0:
        return 0.0 if total < 0 else (total - x0) / -x0
    if total >= 0:
        return math.inf
    raise DomainError("initial balance >= 0 with negative total; outside the natural domain")


@dataclass(frozen=True)
class TildeBounds:
    """Range of weights ``w`` for which ``w*alpha + (1-w)*beta`` is a discount function.

    ``raw`` comes from the supplied grid alone; ``w_inf``/``w_sup`` are
    tightened against a refined grid and always contain ``[0, 1]``.
    """

    w_inf: float
    w_sup: float
    raw: Tuple[float, float]
    grid: Tuple[float, ...]


def default_grid(
    x: Optional[StepCashFlow] = None,
    alphas: Sequence[DiscountFunction] = (),
    n: int = 64,
) -> np.ndarray:
    """Transaction times plus a geometric mesh out to four times the last one.

    Finite support ends of the given discount functions are added, together
    with a point just past each, so that cut-offs are seen.
    """
    last = x.last_time if x is not None and x else 0.0
    horizon = 4.0 * max(last, 1.0)
    pts = {0.0, *np.geomspace(horizon * 1e-4, horizon, n)}
    if x is not None:
        pts.update(x.times)
    for a in alphas:
        s = a.support_supremum()
        if 0 < s < math.inf:
            pts.update((s, s * (1 + 1e-9)))
            horizon = max(horizon, 4 * s)
            pts.add(horizon)
    return np.array(sorted(pts))


def _half_line_bounds(alpha: np.ndarray, beta: np.ndarray, tol: float) -> Tuple[float, float]:
    """Intersect ``a + w*b >= 0`` over nonnegativity and monotonicity rows."""
    a = np.concatenate([beta, beta[:-1] - beta[1:]])
    b = np.concatenate([alpha - beta, (alpha[:-1] - alpha[1:]) - (beta[:-1] - beta[1:])])
    lo, hi = -math.inf, math.inf
    for ai, bi in zip(a, b):
        if abs(bi) <= tol:
            if ai < -tol:
                raise ValueError("weight constraints are inconsistent on this grid")
            continue
        w = -ai / bi
        if bi > 0:
            lo = max(lo, w)
        else:
            hi = min(hi, w)
    return lo, hi


def _refine(grid: np.ndarray, k: int = 4) -> np.ndarray:
    pieces = [grid]
    for i in range(1, k):
        pieces.append(grid[:-1] + (grid[1:] - grid[:-1]) * i / k)
    return np.unique(np.concatenate(pieces))


def tilde_bounds(
    F: NpvFunctional,
    G: NpvFunctional,
    grid: Optional[Sequence[float]] = None,
    tol: float = 1e-12,
) -> TildeBounds:
    if F == G:
        raise ValueError("tilde bounds need two distinct functionals")
    g = np.asarray(default_grid(alphas=(F.discount, G.discount)) if grid is None else grid, dtype=float)
    if g.ndim != 1 or g.size == 0 or g[0] != 0.0 or np.any(np.diff(g) <= 0):
        raise ValueError("grid must be strictly increasing and start at 0")
    raw = _half_line_bounds(F.discount(g), G.discount(g), tol)
    fine = _refine(g)
    ref = _half_line_bounds(F.discount(fine), G.discount(fine), tol)
    lo, hi = max(raw[0], ref[0]), min(raw[1], ref[1])
    if lo > hi:
        raise ValueError("weight bounds are inverted")
    # [0, 1] is admissible by construction; only rounding can cut into it
    lo, hi = min(lo, 0.0), max(hi, 1.0)
    return TildeBounds(float(lo) + 0.0, float(hi), (float(raw[0]), float(raw[1])), tuple(float(t) for t in g))


def _affine(gx: float, diff: float, w: float) -> float:
    """``gx + w*diff`` with ``inf * 0 = 0``."""
    if diff == 0.0:
        return gx
    return gx + w * diff


def tilde_values(F: NpvFunctional, G: NpvFunctional, x: StepCashFlow, bounds: TildeBounds) -> Tuple[float, float]:
    """``(F~(x), G~(x))``: the functionals at the extreme admissible weights."""
    fx, gx = F(x), G(x)
    return _affine(gx, fx - gx, bounds.w_sup), _affine(gx, fx - gx, bounds.w_inf)


def ri_natural_extension(
    F: NpvFunctional,
    G: NpvFunctional,
    x: StepCashFlow,
    grid: Optional[Sequence[float]] = None,
) -> float:
    """Ratio index extended over the natural domain via the extreme functionals."""
    if grid is None:
        grid = default_grid(x, (F.discount, G.discount))
    bounds = tilde_bounds(F, G, grid)
    ft, gt = tilde_values(F, G, x, bounds)
    if ft < 0 and gt < 0:
        return 0.0
    if ft >= 0 and gt < 0:
        return 1.0 - ft / gt if math.isfinite(ft) and math.isfinite(gt) else _ratio_limit(ft, gt)
    if ft >= 0 and gt >= 0:
        return math.inf
    raise DomainError("extreme functionals disagree the wrong way; outside the natural domain")


def _ratio_limit(ft: float, gt: float) -> float:
    if math.isinf(ft) and math.isfinite(gt):
        return math.inf
    if math.isfinite(ft) and math.isinf(gt):
        return 1.0
    raise DomainError("ratio of two unbounded functionals is not defined")
