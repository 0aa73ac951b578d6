"""Independent reference computations used to check the library.

Nothing here imports the package's numerical code: every oracle works
from raw ``(times, amounts)`` arrays and closed-form discount formulas.
"""

import math

import numpy as np


def npv_raw(times, amounts, discount):
    """Plain left-to-right sum of ``a * discount(t)``."""
    total = 0.0
    for t, a in zip(times, amounts):
        total += a * discount(t)
    return total


def exp_family_roots(times, amounts):
    """Nonnegative rates where ``sum a_k exp(-lam t_k)`` vanishes, for whole-number times.

    With ``u = exp(-lam)`` the profile is a polynomial in ``u``; its roots in
    ``(0, 1]`` map back to rates ``-ln u``.
    """
    deg = int(max(times))
    coef = np.zeros(deg + 1)
    for t, a in zip(times, amounts):
        coef[deg - int(t)] += a
    roots = np.roots(np.trim_zeros(coef, "f")) if np.any(coef) else np.array([])
    out = []
    for r in roots:
        if abs(r.imag) < 1e-9 and 0 < r.real <= 1 + 1e-12:
            out.append(-math.log(min(r.real, 1.0)))
    return sorted(out)


def exp_profile_sign_grid(times, amounts, lams):
    t = np.asarray(times, dtype=float)
    a = np.asarray(amounts, dtype=float)
    return np.array([np.sum(a * np.exp(-lam * t)) for lam in lams])


def interpolated_payback(times, amounts, discount):
    """Straight-line interpolation of cumulative discounted balances at whole times.

    Returns the point where the interpolated balance crosses zero for the
    last time from below, or ``None`` when it ends negative or never dips.
    """
    horizon = int(max(times))
    v = np.zeros(horizon + 1)
    for t, a in zip(times, amounts):
        v[int(t):] += a * discount(t)
    if v[-1] < 0 or v[0] >= 0:
        return None
    neg = np.flatnonzero(v < 0)
    k = neg[-1]
    return k + (-v[k]) / (v[k + 1] - v[k])


def hull_grid_feasible(fx, fy, tol=1e-9):
    """Search ``lam >= 0`` with ``fx - lam * fy >= 0`` componentwise on a grid.

    The grid is geometric over ``[1e-3, 1e3]`` plus ``0`` and every ratio
    ``fx_i / fy_i`` (the only places where a constraint becomes tight).
    """
    fx = np.asarray(fx, dtype=float)
    fy = np.asarray(fy, dtype=float)
    cands = [0.0, *np.geomspace(1e-3, 1e3, 601)]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = fx / fy
    cands += [r for r in ratios if np.isfinite(r) and r >= 0]
    for lam in cands:
        slack = fx - lam * fy
        if np.all(slack >= -tol * (np.abs(fx) + lam * np.abs(fy))):
            return True
    return False


def admissible_weights(alpha_vals, beta_vals, ws):
    """Weights ``w`` from ``ws`` for which ``w*alpha + (1-w)*beta`` is nonnegative and nonincreasing."""
    ok = []
    for w in ws:
        h = w * alpha_vals + (1 - w) * beta_vals
        if np.all(h >= -1e-15) and np.all(np.diff(h) <= 1e-15):
            ok.append(w)
    return np.array(ok)


def derivative_ratio_gh_exp(t, gh_rate, gh_shape, exp_rate):
    """``alpha'(t) / beta'(t)`` for a generalized hyperbolic ``alpha`` and exponential ``beta``."""
    da = -gh_rate * (1 + gh_shape * t) ** (-gh_rate / gh_shape - 1)
    db = -exp_rate * np.exp(-exp_rate * t)
    return da / db
