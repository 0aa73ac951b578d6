"""Projects with finitely many transactions.

A project is identified with its cumulative cash flow ``x(t)``: the balance of
all transactions dated at or before ``t``.  For a finite list of transactions
this is a right-continuous step function, so every question about ``x`` can be
answered exactly from the ordered list of jumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence, Tuple, Union

__all__ = [
    "Transaction",
    "StepCashFlow",
    "QMembership",
    "cumulative_at",
    "combine",
    "scale",
    "negate",
    "truncate",
    "postpone",
    "reduce",
    "classify",
    "sup_norm",
    "is_in_P_plus",
    "is_in_P_plusplus",
]


@dataclass(frozen=True)
class Transaction:
    """A single dated payment; positive amounts are inflows."""

    time: float
    amount: float

    def __post_init__(self):
        if not math.isfinite(self.time) or self.time < 0:
            raise ValueError(f"transaction time must be finite and >= 0, got {self.time!r}")
        if not math.isfinite(self.amount):
            raise ValueError(f"transaction amount must be finite, got {self.amount!r}")


PairLike = Union[Transaction, Tuple[float, float], Sequence[float]]


class StepCashFlow:
    """Cumulative cash flow of a project with finitely many transactions.

    The constructor accepts ``Transaction`` objects or ``(time, amount)`` pairs
    in any order.  Transactions sharing a time are merged and zero amounts are
    dropped, so two flows are equal exactly when their cumulative functions
    coincide.

    >>> x = StepCashFlow([(0, -1.0), (1, 2.0)])
    >>> x.cumulative_at(0.5), x.cumulative_at(1)
    (-1.0, 1.0)
    """

    __slots__ = ("_times", "_amounts")

    def __init__(self, transactions: Iterable[PairLike] = ()):
        merged: dict[float, list[float]] = {}
        for item in transactions:
            tr = item if isinstance(item, Transaction) else Transaction(float(item[0]), float(item[1]))
            merged.setdefault(tr.time, []).append(tr.amount)
        times, amounts = [], []
        for t in sorted(merged):
            a = math.fsum(merged[t])
            if a != 0.0:
                times.append(t)
                amounts.append(a)
        self._times: Tuple[float, ...] = tuple(times)
        self._amounts: Tuple[float, ...] = tuple(amounts)

    @classmethod
    def from_arrays(cls, times: Iterable[float], amounts: Iterable[float]) -> "StepCashFlow":
        return cls(zip(times, amounts))

    @classmethod
    def unit(cls, t: float = 0.0, amount: float = 1.0) -> "StepCashFlow":
        """``amount`` received at time ``t`` (the generator ``1_t`` scaled)."""
        return cls([(t, amount)])

    # -- raw access -------------------------------------------------------
    @property
    def times(self) -> Tuple[float, ...]:
        return self._times

    @property
    def amounts(self) -> Tuple[float, ...]:
        return self._amounts

    @property
    def transactions(self) -> Tuple[Transaction, ...]:
        return tuple(Transaction(t, a) for t, a in zip(self._times, self._amounts))

    def __iter__(self) -> Iterator[Tuple[float, float]]:
        return iter(zip(self._times, self._amounts))

    def __len__(self) -> int:
        return len(self._times)

    def __bool__(self) -> bool:
        return bool(self._times)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepCashFlow):
            return NotImplemented
        return self._times == other._times and self._amounts == other._amounts

    def __hash__(self) -> int:
        return hash((self._times, self._amounts))

    def __repr__(self) -> str:
        body = ", ".join(f"({t:g}, {a:g})" for t, a in self)
        return f"StepCashFlow([{body}])"

    # -- balances ---------------------------------------------------------
    @property
    def initial(self) -> float:
        """``x(0)``."""
        if self._times and self._times[0] == 0.0:
            return self._amounts[0]
        return 0.0

    @property
    def total(self) -> float:
        """``x(+inf)``, the sum of all amounts."""
        return math.fsum(self._amounts)

    @property
    def last_time(self) -> float:
        return self._times[-1] if self._times else 0.0

    def cumulative_at(self, t: float) -> float:
        if t < 0:
            raise ValueError("cumulative balance is defined for t >= 0 only")
        return math.fsum(a for s, a in self if s <= t)

    def breakpoint_values(self) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        """Piece start times and cumulative values of the step function.

        The first piece always starts at 0 (value ``x(0)``); every later piece
        starts at a positive transaction time.
        """
        starts = [0.0]
        values = [self.initial]
        running = [self.initial]
        for t, a in self:
            if t == 0.0:
                continue
            running.append(a)
            starts.append(t)
            values.append(math.fsum(running))
        return tuple(starts), tuple(values)

    def future_amounts(self) -> Tuple[float, ...]:
        """Jumps at positive times, in time order."""
        return tuple(a for t, a in self if t > 0.0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "StepCashFlow") -> "StepCashFlow":
        return combine(self, other)

    def __neg__(self) -> "StepCashFlow":
        return negate(self)

    def __sub__(self, other: "StepCashFlow") -> "StepCashFlow":
        return combine(self, negate(other))

    def cumulative_values(self) -> Tuple[float, ...]:
        return tuple(accumulate(self._amounts))

    def is_discrete(self) -> bool:
        """All transaction times are whole numbers."""
        return all(float(t).is_integer() for t in self._times)


def cumulative_at(x: StepCashFlow, t: float) -> float:
    return x.cumulative_at(t)


def combine(x: StepCashFlow, y: StepCashFlow) -> StepCashFlow:
    return StepCashFlow(list(x) + list(y))


def scale(x: StepCashFlow, factor: float) -> StepCashFlow:
    if not factor > 0:
        raise ValueError(f"scale factor must be positive, got {factor!r}")
    return StepCashFlow((t, factor * a) for t, a in x)


def negate(x: StepCashFlow) -> StepCashFlow:
    return StepCashFlow((t, -a) for t, a in x)


def truncate(x: StepCashFlow, tau: float) -> StepCashFlow:
    """The project stopped at ``tau``: transactions after ``tau`` are dropped."""
    if tau < 0:
        raise ValueError("truncation time must be >= 0")
    return StepCashFlow((t, a) for t, a in x if t <= tau)


def postpone(x: StepCashFlow, tau: float) -> StepCashFlow:
    if tau < 0:
        raise ValueError("postponement must be >= 0")
    return StepCashFlow((t + tau, a) for t, a in x)


def reduce(x: StepCashFlow, gamma: float) -> StepCashFlow:
    """Scale every future (``t > 0``) payment by ``gamma``, keep ``x(0)``."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"reduction factor must lie in [0, 1], got {gamma!r}")
    return StepCashFlow((t, a if t == 0.0 else gamma * a) for t, a in x)


def sup_norm(x: StepCashFlow) -> float:
    _, values = x.breakpoint_values()
    return max(abs(v) for v in values)


def is_in_P_plus(x: StepCashFlow) -> bool:
    _, values = x.breakpoint_values()
    return min(values) >= 0.0


def is_in_P_plusplus(x: StepCashFlow) -> bool:
    _, values = x.breakpoint_values()
    return min(values) > 0.0


@dataclass(frozen=True)
class QMembership:
    """Membership flags for the notable project classes.

    ``Q1``: initial outlay followed by inflows only.  ``Q2``: outflows then
    inflows.  ``Q3``: cumulative balance changes sign once.  ``Q4``: initial
    outlay.  ``Q5``: initial outlay possibly spread over an initial period.
    The primed classes are the two-transaction prototypes and ``S`` is the
    positive cone over ``Q2doubleprime``.
    """

    Q1: bool
    Q2: bool
    Q3: bool
    Q4: bool
    Q5: bool
    Q1prime: bool
    Q2prime: bool
    Q2doubleprime: bool
    Q4prime: bool
    Q5prime: bool
    Q5doubleprime: bool
    S: bool

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _two_transaction(x: StepCashFlow):
    """``(a, b, t, tau)`` when ``x = -a 1_t + b 1_tau`` with ``a > 0``, ``b > 0``."""
    if len(x) != 2:
        return None
    (t, a), (tau, b) = x
    if a < 0 < b:
        return -a, b, t, tau
    return None


def classify(x: StepCashFlow) -> QMembership:
    x0 = x.initial
    _, values = x.breakpoint_values()
    jumps = x.future_amounts()

    q1 = x0 < 0 and all(a >= 0 for a in jumps)
    # outflows on [0, tau), inflows on [tau, inf); the jump at tau itself is free
    down_up = any(
        all(a <= 0 for a in jumps[:k]) and all(a >= 0 for a in jumps[k + 1:])
        for k in range(len(jumps) + 1)
    )
    q2 = q1 or (x0 <= 0 and not is_in_P_plus(x) and down_up)

    if len(values) == 1:
        q3 = values[0] == 0.0
    else:
        q3 = any(
            all(v <= 0 for v in values[:j]) and all(v >= 0 for v in values[j:])
            for j in range(1, len(values))
        )

    q4 = x0 < 0
    q5 = q4 or (x0 == 0.0 and bool(jumps) and jumps[0] < 0)
    q5pp = x0 <= 0

    pattern = _two_transaction(x)
    q2p = q2pp = q1p = s = False
    if pattern is not None:
        a, b, t, tau = pattern
        q2p = a == 1.0
        q2pp = q2p and b >= 1.0
        q1p = q2pp and t == 0.0
        s = a <= b

    # three transactions -1_0 + a 1_t + b 1_tau (t, tau > 0, amounts free)
    q4p = x0 == -1.0 and len(x) <= 3
    # the same pattern postponed by s >= 0
    q5p = 1 <= len(x) <= 3 and x.amounts[0] == -1.0

    return QMembership(
        Q1=q1,
        Q2=q2,
        Q3=q3,
        Q4=q4,
        Q5=q5,
        Q1prime=q1p,
        Q2prime=q2p,
        Q2doubleprime=q2pp,
        Q4prime=q4p,
        Q5prime=q5p,
        Q5doubleprime=q5pp,
        S=s,
    )
