"""Scenario sets and the profitability orderings they induce.

A scenario set is a collection of NPV functionals.  Project ``x`` is at least
as profitable as ``y`` when every scenario accepting ``y`` (NPV >= 0) also
accepts ``x``.  Each kind of scenario set answers that inclusion question in
its own way: a direct scan for finite sets, acceptance-set inclusion for
one-parameter rate families, breakpoint scans for truncation ranges and
closed-form intervals for reduction ranges.  Only intensity ranges with a
non-exponential discount function and products with continuous modifiers
fall back to parameter sampling, and those results are flagged inexact.
"""

from __future__ import annotations

import enum
import functools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .cashflow import StepCashFlow, combine, negate, reduce, scale, sup_norm, truncate
from .discount import CompoundAnnual, DiscountFunction, Exponential, Unit
from .irr import (
    AcceptanceSet,
    ConstantSensitivityFamily,
    DFamily,
    ExponentialFamily,
    GeneralizedHyperbolicFamily,
    PowerFamily,
    acceptance_set,
)
from .results import ComparabilityResult, Relation, Verdict
from .valuation import NpvFunctional, h_gamma, npv, npv_truncated

__all__ = [
    "ScenarioSet",
    "Finite",
    "DFamilyRange",
    "TruncationFamily",
    "ReductionFamily",
    "IntensityFamily",
    "Product",
    "Union",
    "Usury",
    "HullInterval",
    "AxiomReport",
    "accepts",
    "compare",
    "hull_interval",
    "compare_convex_hull_finite",
    "sign_compare",
    "usury_classify",
    "rate_truncation_scenarios",
    "axiom_harness",
]

DEFAULT_TOL = 1e-9
SAMPLES = 129
PARAM_RESOLUTION = 1e-6
USURY_RATE = 0.6
USURY_TOL = 1e-12


# -- inclusion outcomes -------------------------------------------------------


@dataclass(frozen=True)
class _Incl:
    """Outcome of testing ``acc(y) <= acc(x)``; ``witness`` accepts ``y`` but not ``x``."""

    verdict: Verdict
    witness: Optional[str] = None
    exact: bool = True

    def tagged(self, suffix: str) -> "_Incl":
        if self.witness is None or not suffix:
            return self
        return _Incl(self.verdict, f"{self.witness} & {suffix}", self.exact)


def _all(parts: Iterable[_Incl]) -> _Incl:
    parts = list(parts)
    exact = all(p.exact for p in parts)
    for p in parts:
        if p.verdict is Verdict.FALSE:
            return _Incl(Verdict.FALSE, p.witness, exact)
    if any(p.verdict is Verdict.UNDETERMINED for p in parts):
        return _Incl(Verdict.UNDETERMINED, None, exact)
    return _Incl(Verdict.TRUE, None, exact)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PROFIT_KERNEL_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: Sequence) -> List:
    """Order-preserving map, threaded when ``PROFIT_KERNEL_THREADS`` > 1."""
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _boundary(v: float, s: float, tol: float) -> bool:
    return v != 0.0 and abs(v) <= tol * s


def _rows_inclusion(rows: Sequence[Tuple[str, float, float, float, float]], tol: float) -> _Incl:
    """Scenario-wise scan over ``(label, F(x), scale_x, F(y), scale_y)`` rows."""
    undetermined = False
    for label, vx, sx, vy, sy in rows:
        bx, by = _boundary(vx, sx, tol), _boundary(vy, sy, tol)
        y_maybe = vy >= 0 or by
        x_maybe_not = vx < 0 or bx
        if vy >= 0 and vx < 0 and not (bx or by):
            return _Incl(Verdict.FALSE, label)
        if y_maybe and x_maybe_not:
            undetermined = True
    return _Incl(Verdict.UNDETERMINED if undetermined else Verdict.TRUE)


Intervals = Tuple[Tuple[float, float], ...]


def _difference(a: float, b: float, xs: Intervals) -> List[Tuple[float, float]]:
    """``[a, b]`` minus the union of ``xs`` (open/closed ends ignored)."""
    pieces = []
    cur = a
    for c, d in xs:
        if d < cur:
            continue
        if c > b:
            break
        if c > cur:
            pieces.append((cur, min(c, b)))
        cur = max(cur, d)
        if cur >= b:
            break
    if cur < b or (cur == a == b and not any(c <= a <= d for c, d in xs)):
        pieces.append((cur, b))
    return pieces


def _witness_point(lo: float, hi: float) -> float:
    if math.isinf(hi):
        return lo + max(1.0, abs(lo))
    return 0.5 * (lo + hi)


def _interval_inclusion(
    xs: Intervals, ys: Intervals, delta: Callable[[float], float], label: Callable[[float], str]
) -> _Incl:
    """``ys <= xs`` with endpoint differences up to ``delta`` treated as ties."""
    for a, b in ys:
        for lo, hi in _difference(a, b, xs):
            length = hi - lo
            if length > delta(lo) or (length == 0 and not any(c - delta(c) <= lo <= d + delta(d) for c, d in xs)):
                return _Incl(Verdict.FALSE, label(_witness_point(lo, hi)))
    return _Incl(Verdict.TRUE)


def _rel_delta(tol: float) -> Callable[[float], float]:
    return lambda v: tol * max(1.0, abs(v)) if math.isfinite(v) else 0.0


# -- cached per-project profiles ----------------------------------------------


@functools.lru_cache(maxsize=8192)
def _acc(family: DFamily, x: StepCashFlow, tol: float) -> AcceptanceSet:
    return acceptance_set(family, x, tol=tol)


@functools.lru_cache(maxsize=65536)
def _fvalue(F: NpvFunctional, x: StepCashFlow) -> Tuple[float, float]:
    return F(x), F.scale(x)


def _family_label(family: DFamily) -> str:
    if isinstance(family, ExponentialFamily):
        return "E"
    if isinstance(family, ConstantSensitivityFamily):
        return f"CS[beta={family.beta:g}]"
    if isinstance(family, GeneralizedHyperbolicFamily):
        return f"GH[beta={family.beta:g}]"
    if isinstance(family, PowerFamily):
        return f"Pow[{family.base!r}]"
    return type(family).__name__


def _check_range(r: Tuple[float, float], name: str, lower: float = 0.0) -> Tuple[float, float]:
    lo, hi = float(r[0]), float(r[1])
    if not (lower <= lo <= hi) or math.isnan(hi):
        raise ValueError(f"{name} range must satisfy {lower} <= lo <= hi, got {r!r}")
    return lo, hi


# -- scenario sets ------------------------------------------------------------


class ScenarioSet:
    """Base class; subclasses decide ``acc(y) <= acc(x)``."""

    def _includes(self, x: StepCashFlow, y: StepCashFlow, tol: float) -> _Incl:
        raise NotImplementedError


@dataclass(frozen=True)
class Finite(ScenarioSet):
    """Finitely many NPV functionals, deduplicated by label."""

    functionals: Tuple[NpvFunctional, ...]

    def __post_init__(self):
        seen, uniq = set(), []
        for F in self.functionals:
            if not isinstance(F, NpvFunctional):
                F = NpvFunctional(F)
            if F.label not in seen:
                seen.add(F.label)
                uniq.append(F)
        if not uniq:
            raise ValueError("a finite scenario set needs at least one functional")
        object.__setattr__(self, "functionals", tuple(uniq))

    def _includes(self, x, y, tol):
        rows = [(F.label, *_fvalue(F, x), *_fvalue(F, y)) for F in self.functionals]
        return _rows_inclusion(rows, tol)


@dataclass(frozen=True)
class DFamilyRange(ScenarioSet):
    """Members ``alpha_lam`` of a D-family with ``lam`` in a closed range (``hi`` may be ``inf``)."""

    family: DFamily
    lambda_range: Tuple[float, float] = (0.0, math.inf)

    def __post_init__(self):
        object.__setattr__(self, "lambda_range", _check_range(self.lambda_range, "rate"))

    def _includes(self, x, y, tol):
        lo, hi = self.lambda_range
        ax, ay = _acc(self.family, x, tol), _acc(self.family, y, tol)
        name = _family_label(self.family)
        inc = _interval_inclusion(
            ax.restrict(lo, hi), ay.restrict(lo, hi), _rel_delta(tol), lambda p: f"{name}[lambda={p:.6g}]"
        )
        if inc.verdict is Verdict.TRUE and (ax.undetermined or ay.undetermined):
            return _Incl(Verdict.UNDETERMINED)
        return inc


@dataclass(frozen=True)
class TruncationFamily(ScenarioSet):
    """``G_tau`` for ``tau`` in a range, optionally with the untruncated functional.

    ``alpha=None`` is allowed only as a modifier inside a ``Product``.
    """

    alpha: Optional[DiscountFunction] = None
    tau_range: Tuple[float, float] = (1.0, math.inf)
    include_untruncated: bool = True

    def __post_init__(self):
        lo, hi = _check_range(self.tau_range, "truncation")
        if not lo > 0:
            raise ValueError("truncation times must be positive")
        object.__setattr__(self, "tau_range", (lo, hi))

    def taus(self, x: StepCashFlow, y: StepCashFlow) -> List[float]:
        """One representative per piece on which both truncated NPVs are constant."""
        lo, hi = self.tau_range
        inner = {t for t in (*x.times, *y.times) if lo < t <= hi}
        return sorted({lo} | inner)

    def _pieces(self, x, y):
        for tau in self.taus(x, y):
            yield truncate(x, tau), truncate(y, tau), f"G[tau={tau:g}]", True
        if self.include_untruncated:
            yield x, y, "", True

    def _includes(self, x, y, tol):
        alpha = _need_alpha(self.alpha)
        rows = []
        for tau in self.taus(x, y):
            F = NpvFunctional(alpha)
            xt, yt = truncate(x, tau), truncate(y, tau)
            rows.append((f"G[tau={tau:g}]", *_fvalue(F, xt), *_fvalue(F, yt)))
        if self.include_untruncated:
            F = NpvFunctional(alpha)
            rows.append(("F", *_fvalue(F, x), *_fvalue(F, y)))
        return _rows_inclusion(rows, tol)


def _need_alpha(alpha: Optional[DiscountFunction]) -> DiscountFunction:
    if alpha is None:
        raise ValueError("this scenario set needs a discount function outside a product")
    return alpha


def _future_value(alpha: DiscountFunction, x: StepCashFlow) -> float:
    return npv(alpha, StepCashFlow((t, a) for t, a in x if t > 0))


def _gamma_interval(alpha: DiscountFunction, x: StepCashFlow, lo: float, hi: float) -> Intervals:
    """``{gamma in [lo, hi] : x(0) + gamma * (F(x) - x(0)) >= 0}``."""
    x0, d = x.initial, _future_value(alpha, x)
    if d > 0:
        a, b = max(lo, -x0 / d), hi
    elif d < 0:
        a, b = lo, min(hi, -x0 / d)
    else:
        a, b = (lo, hi) if x0 >= 0 else (1.0, 0.0)
    return ((a, b),) if a <= b else ()


@dataclass(frozen=True)
class ReductionFamily(ScenarioSet):
    """``H_gamma`` for ``gamma`` in a sub-range of ``[0, 1/alpha(0+)]``."""

    alpha: Optional[DiscountFunction] = None
    gamma_range: Tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        lo, hi = _check_range(self.gamma_range, "reduction")
        if self.alpha is not None:
            cap = self.alpha.right_limit_at_zero()
            if cap > 0 and hi > 1.0 / cap:
                raise ValueError("reduction weights must not exceed 1/alpha(0+)")
        object.__setattr__(self, "gamma_range", (lo, hi))

    def _pieces(self, x, y):
        lo, hi = self.gamma_range
        if hi > 1.0:
            raise ValueError("reduction weights above 1 cannot modify a product member")
        for g in np.linspace(lo, hi, 33):
            yield reduce(x, float(g)), reduce(y, float(g)), f"H[gamma={g:.6g}]", False

    def _includes(self, x, y, tol):
        alpha = _need_alpha(self.alpha)
        lo, hi = self.gamma_range
        return _interval_inclusion(
            _gamma_interval(alpha, x, lo, hi),
            _gamma_interval(alpha, y, lo, hi),
            _rel_delta(tol),
            lambda g: f"H[gamma={g:.6g}]",
        )


def _speed_up(x: StepCashFlow, lam: float) -> StepCashFlow:
    """Same payments carried out ``lam`` times as fast."""
    return StepCashFlow((t / lam, a) for t, a in x)


def _sampled_intervals(fn: Callable[[float], float], grid: np.ndarray) -> Intervals:
    """Acceptance intervals of ``fn >= 0`` on ``grid`` with flips refined by bisection."""
    signs = [fn(p) >= 0 for p in grid]
    cuts = []
    for i in range(len(grid) - 1):
        if signs[i] == signs[i + 1]:
            continue
        a, b = float(grid[i]), float(grid[i + 1])
        while b - a > PARAM_RESOLUTION * max(1.0, abs(a)):
            m = 0.5 * (a + b)
            if (fn(m) >= 0) == signs[i]:
                a = m
            else:
                b = m
        cuts.append((a, b, signs[i]))
    out: List[List[float]] = []
    start = float(grid[0]) if signs[0] else None
    for a, b, was_accepting in cuts:
        if was_accepting:
            out.append([start, a])
            start = None
        else:
            start = b
    if start is not None:
        out.append([start, float(grid[-1])])
    return tuple((p, q) for p, q in out)


@dataclass(frozen=True)
class IntensityFamily(ScenarioSet):
    """``U_lam`` for ``lam`` in a range: the project run ``lam`` times as fast."""

    alpha: Optional[DiscountFunction] = None
    lambda_range: Tuple[float, float] = (0.5, 2.0)

    def __post_init__(self):
        lo, hi = _check_range(self.lambda_range, "intensity")
        if not lo > 0:
            raise ValueError("intensities must be positive")
        object.__setattr__(self, "lambda_range", (lo, hi))

    def _grid(self) -> Tuple[np.ndarray, bool]:
        lo, hi = self.lambda_range
        if lo == hi:
            return np.array([lo]), True
        top = hi if math.isfinite(hi) else max(lo, 1.0) * 1e6
        return np.geomspace(lo, top, SAMPLES), False

    def _pieces(self, x, y):
        for lam in self._grid()[0]:
            yield _speed_up(x, lam), _speed_up(y, lam), f"U[lambda={lam:.6g}]", False

    def _includes(self, x, y, tol):
        alpha = _need_alpha(self.alpha)
        lo, hi = self.lambda_range
        if isinstance(alpha, Exponential):
            if alpha.rate == 0.0:
                F = NpvFunctional(alpha)
                return _rows_inclusion([("U", *_fvalue(F, x), *_fvalue(F, y))], tol)
            # U_lam under exp(-r t) is the exponential member with rate r / lam
            r = alpha.rate
            mu = DFamilyRange(ExponentialFamily(), (r / hi if math.isfinite(hi) else 0.0, r / lo))
            inc = mu._includes(x, y, tol)
            if inc.witness is not None:
                m = float(inc.witness.split("=")[1].rstrip("]"))
                lam = r / m if m > 0 else math.inf
                inc = _Incl(inc.verdict, f"U[lambda={lam:.6g}]", inc.exact)
            return inc
        grid, exact = self._grid()
        if grid.size == 1:
            F = NpvFunctional(alpha)
            rows = [("U", *_fvalue(F, _speed_up(x, grid[0])), *_fvalue(F, _speed_up(y, grid[0])))]
            return _rows_inclusion(rows, tol)
        ix = _sampled_intervals(lambda l: npv(alpha, _speed_up(x, l)), grid)
        iy = _sampled_intervals(lambda l: npv(alpha, _speed_up(y, l)), grid)
        label = lambda l: f"U[lambda={l:.6g}]"
        inc = _interval_inclusion(ix, iy, lambda v: 0.0, label)
        if inc.verdict is Verdict.FALSE:
            near = _interval_inclusion(ix, iy, lambda v: 2 * PARAM_RESOLUTION * max(1.0, abs(v)), label)
            if near.verdict is Verdict.TRUE:
                inc = _Incl(Verdict.UNDETERMINED)
        return _Incl(inc.verdict, inc.witness, exact=False)


_MODIFIERS = (TruncationFamily, ReductionFamily, IntensityFamily)


@dataclass(frozen=True)
class Product(ScenarioSet):
    """A base set (``Finite`` or ``DFamilyRange``) combined with modifier ranges.

    Each modifier has ``alpha=None`` and wraps the base discount function in
    listed order; the realized scenarios are all parameter combinations.
    Truncation modifiers are handled exactly; reduction and intensity
    modifiers are sampled and make the result inexact.
    """

    components: Tuple[ScenarioSet, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps or not isinstance(comps[0], (Finite, DFamilyRange)):
            raise ValueError("a product starts with a finite or rate-family base")
        for m in comps[1:]:
            if not isinstance(m, _MODIFIERS) or m.alpha is not None:
                raise ValueError("product modifiers are truncation/reduction/intensity ranges without alpha")
        object.__setattr__(self, "components", comps)

    @property
    def base(self) -> ScenarioSet:
        return self.components[0]

    @property
    def modifiers(self) -> Tuple[ScenarioSet, ...]:
        return self.components[1:]

    def _expand(self, mods, x, y, label: str, exact: bool) -> Iterator[Tuple[StepCashFlow, StepCashFlow, str, bool]]:
        # the modifier listed last acts on the project first
        if not mods:
            yield x, y, label, exact
            return
        for xx, yy, lab, ex in mods[-1]._pieces(x, y):
            joined = " & ".join(s for s in (label, lab) if s)
            yield from self._expand(mods[:-1], xx, yy, joined, exact and ex)

    def _includes(self, x, y, tol):
        pieces = list(self._expand(self.modifiers, x, y, "", True))
        results = _pmap(lambda p: self.base._includes(p[0], p[1], tol).tagged(p[2]), pieces)
        exact = all(p[3] for p in pieces)
        out = _all(results)
        return _Incl(out.verdict, out.witness, out.exact and exact)


@dataclass(frozen=True)
class Union(ScenarioSet):
    parts: Tuple[ScenarioSet, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a union needs at least one part")
        object.__setattr__(self, "parts", tuple(self.parts))

    def _includes(self, x, y, tol):
        return _all(_pmap(lambda S: S._includes(x, y, tol), list(self.parts)))


# -- comparisons --------------------------------------------------------------


def accepts(F: NpvFunctional, x: StepCashFlow) -> bool:
    return npv(F, x) >= 0


def compare(S: ScenarioSet, x: StepCashFlow, y: StepCashFlow, tol: float = DEFAULT_TOL) -> ComparabilityResult:
    """Relation between ``x`` and ``y`` under the ordering induced by ``S``."""
    if x == y:
        return ComparabilityResult(Relation.EQUIVALENT)
    x_ge_y = S._includes(x, y, tol)
    y_ge_x = S._includes(y, x, tol)
    return ComparabilityResult.from_inclusions(
        x_ge_y.verdict,
        y_ge_x.verdict,
        accepts_x_only=y_ge_x.witness,
        accepts_y_only=x_ge_y.witness,
        exact=x_ge_y.exact and y_ge_x.exact,
    )


def sign_compare(S: ScenarioSet, x: StepCashFlow, y: StepCashFlow, tol: float = DEFAULT_TOL) -> ComparabilityResult:
    """Compare NPV signs scenario-wise.

    ``sgn F(x) >= sgn F(y)`` for every ``F`` holds exactly when ``x`` is
    accepted wherever ``y`` is and ``-y`` is accepted wherever ``-x`` is, so
    the sign relation reduces to two ordinary inclusions.
    """
    if x == y:
        return ComparabilityResult(Relation.EQUIVALENT)
    nx, ny = negate(x), negate(y)

    def both(p, q, np_, nq):
        a = S._includes(p, q, tol)
        b = S._includes(nq, np_, tol)
        return _all([a, b])

    fwd = both(x, y, nx, ny)
    bwd = both(y, x, ny, nx)
    return ComparabilityResult.from_inclusions(
        fwd.verdict, bwd.verdict, accepts_x_only=bwd.witness, accepts_y_only=fwd.witness, exact=fwd.exact and bwd.exact
    )


@dataclass(frozen=True)
class HullInterval:
    """Feasible multipliers ``lam >= 0`` with ``F(x) >= lam * F(y)`` for all ``F``.

    ``boundary`` marks instances decided by values within tolerance of a tie.
    """

    lower: float
    upper: float
    feasible: bool
    boundary: bool


def hull_interval(S: Finite, x: StepCashFlow, y: StepCashFlow, tol: float = DEFAULT_TOL) -> HullInterval:
    lower, upper = 0.0, math.inf
    zero_ok, boundary = True, False
    for F in S.functionals:
        fx, sx = _fvalue(F, x)
        fy, sy = _fvalue(F, y)
        if _boundary(fy, sy, tol) or (fy == 0 and _boundary(fx, sx, tol)):
            boundary = True
        if fy > 0:
            upper = min(upper, fx / fy)
        elif fy < 0:
            lower = max(lower, fx / fy)
        elif fx < 0:
            zero_ok = False
    feasible = zero_ok and lower <= upper
    if zero_ok and math.isfinite(upper) and abs(lower - upper) <= tol * max(1.0, abs(upper)):
        boundary = True
    return HullInterval(lower, upper, feasible, boundary)


def compare_convex_hull_finite(S: Finite, x: StepCashFlow, y: StepCashFlow, tol: float = DEFAULT_TOL) -> bool:
    """``x`` at least as profitable as ``y`` under the closed convex hull of ``S``.

    Feasibility of ``F(x - lam*y) >= 0`` for all ``F`` in ``S`` with some
    ``lam >= 0``: a one-variable system of half-lines.
    """
    if not isinstance(S, Finite):
        raise TypeError("convex-hull comparison needs a finite scenario set")
    return hull_interval(S, x, y, tol).feasible


class Usury(enum.Enum):
    USURIOUS = "usurious"
    NON_USURIOUS = "non_usurious"


def usury_classify(x: StepCashFlow, rate: float = USURY_RATE, tol: float = USURY_TOL) -> Usury:
    """A lender flow is usurious when its NPV at ``rate`` per period is nonnegative.

    NPVs within ``tol`` (relative to the discounted gross flow) of zero count
    as zero, so decimal ties such as ``2.56`` against ``1.6**2`` stay ties.
    """
    F = NpvFunctional(CompoundAnnual(rate))
    value, size = F(x), F.scale(x)
    return Usury.USURIOUS if value >= -tol * size else Usury.NON_USURIOUS


def rate_truncation_scenarios(
    rate_lo: float, rate_hi: float, tau_min: float, include_untruncated: bool = True
) -> ScenarioSet:
    """Compound rates in ``[rate_lo, rate_hi]`` under an unknown horizon ``tau >= tau_min``."""
    if not 0 <= rate_lo <= rate_hi:
        raise ValueError("need 0 <= rate_lo <= rate_hi")
    if not tau_min > 0:
        raise ValueError("tau_min must be positive")
    rates = DFamilyRange(ExponentialFamily(), (math.log1p(rate_lo), math.log1p(rate_hi)))
    if math.isinf(tau_min):
        return rates
    return Product((rates, TruncationFamily(None, (tau_min, math.inf), include_untruncated)))


# -- axiom consequences -------------------------------------------------------


@dataclass
class AxiomReport:
    """Counts of checks run, skipped (undetermined) and violated, per property."""

    checked: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def _tick(self, name: str, passed: Optional[bool], detail: str = "") -> None:
        if passed is None:
            self.skipped[name] = self.skipped.get(name, 0) + 1
            return
        self.checked[name] = self.checked.get(name, 0) + 1
        if not passed:
            self.violations.append(f"{name}: {detail}")


def _definite(r: ComparabilityResult) -> bool:
    return r.relation not in (Relation.UNDETERMINED, Relation.GREATER_EQ, Relation.LESS_EQ)


def _geq(r: ComparabilityResult) -> Optional[bool]:
    """Three-valued reading of ``x >= y``; ``None`` when not decided."""
    if r.relation.at_least:
        return True
    if r.relation in (Relation.UNDETERMINED, Relation.LESS_EQ):
        return None
    return False


def _singletons(S: ScenarioSet) -> List[ScenarioSet]:
    if isinstance(S, Finite):
        return [Finite((F,)) for F in S.functionals]
    if isinstance(S, DFamilyRange):
        lo, hi = S.lambda_range
        pts = [lo] if not math.isfinite(hi) else [lo, hi]
        return [DFamilyRange(S.family, (p, p)) for p in pts]
    return []


def axiom_harness(
    S: ScenarioSet,
    sample: Sequence[StepCashFlow],
    tol: float = DEFAULT_TOL,
    offsets: Sequence[int] = (1, 2, 3),
    scales: Sequence[float] = (0.5, 2.0, 3.0),
) -> AxiomReport:
    """Check consequences of the profitability axioms on a sample of projects.

    Pairs are ``(sample[i], sample[i + k])`` for ``k`` in ``offsets``.
    Checked: scale invariance, the INT sandwich, monotonicity (MON) against
    a dominating project, incomparability of ``x`` and ``-x`` when the unit
    inflow beats both, totality for singleton subsets, and stability under
    truncation or reduction for those scenario kinds.
    """
    if not sample:
        raise ValueError("sample must be nonempty")
    rep = AxiomReport()
    n = len(sample)
    pairs = [(sample[i], sample[i + k]) for k in offsets for i in range(n - k)]
    unit = StepCashFlow.unit(0.0, 1.0)

    for x in sample:
        for c in scales:
            r = compare(S, scale(x, c), x, tol)
            ok = None if r.relation is Relation.UNDETERMINED else r.relation is Relation.EQUIVALENT
            rep._tick("scale_invariance", ok, f"{x!r} * {c}: {r.relation.value}")

        # MON: a project dominating x pointwise beats whatever x beats
        xp = combine(x, StepCashFlow.unit(0.0, 1.0 + _sup(x)))
        for z in sample[:3]:
            if compare(S, x, z, tol).relation.at_least:
                r = compare(S, xp, z, tol)
                rep._tick("MON", _geq(r), f"{xp!r} vs {z!r}: {r.relation.value}")

        r_pos, r_neg = compare(S, unit, x, tol), compare(S, unit, negate(x), tol)
        if r_pos.relation is Relation.GREATER_STRICT and r_neg.relation is Relation.GREATER_STRICT:
            r = compare(S, x, negate(x), tol)
            rep._tick("incomparable_negation", r.relation is Relation.INCOMPARABLE if _definite(r) else None,
                      f"{x!r}: {r.relation.value}")

    for x, y in pairs:
        r = compare(S, x, y, tol)
        if r.relation.at_most and not r.relation.at_least:
            x, y, r = y, x, r.flipped()
        if r.relation.at_least:
            s = combine(x, y)
            a, b = compare(S, x, s, tol), compare(S, s, y, tol)
            ga, gb = _geq(a), _geq(b)
            ok = None if None in (ga, gb) and False not in (ga, gb) else bool(ga and gb)
            rep._tick("INT_sandwich", ok, f"{x!r}, {y!r}: {a.relation.value}, {b.relation.value}")
            for taus, name, transform in _stability_params(S, x, y):
                for p in taus:
                    t = compare(S, transform(x, p), transform(y, p), tol)
                    rep._tick(name, _geq(t),
                              f"{x!r}, {y!r} at {p:g}: {t.relation.value}")

    for T in _singletons(S):
        for x, y in pairs:
            r = compare(T, x, y, tol)
            ok = None if r.relation is Relation.UNDETERMINED else r.relation is not Relation.INCOMPARABLE
            rep._tick("singleton_totality", ok, f"{x!r}, {y!r}")
    return rep


def _sup(x: StepCashFlow) -> float:
    return sup_norm(x) if x else 0.0


def _stability_params(S: ScenarioSet, x: StepCashFlow, y: StepCashFlow):
    if isinstance(S, TruncationFamily):
        lo, hi = S.tau_range
        taus = sorted({lo, *(t for t in (*x.times, *y.times) if lo <= t <= hi)})
        yield taus, "truncation_stability", truncate
    if isinstance(S, ReductionFamily) and S.gamma_range[0] == 0.0 and S.gamma_range[1] <= 1.0:
        yield [0.25, 0.5, 0.75], "reduction_stability", reduce
