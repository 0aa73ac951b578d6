"""JSON and CSV formats for cash flows, discount functions and scenario sets.

Cash flows::

    {"transactions": [{"t": 0, "amount": -1.0}, {"t": 1, "amount": 2.0}]}

or CSV with the header ``t,amount``.  Discount functions, D-families and
scenario sets are JSON objects tagged by ``"kind"``.  Extended reals are
written as numbers or the strings ``"+inf"`` / ``"-inf"``.
"""

from __future__ import annotations

import csv
import enum
import io as _io
import json
import math
import numbers
from dataclasses import fields, is_dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Union as TUnion

from .cashflow import StepCashFlow
from .discount import (
    ChiMix,
    CompoundAnnual,
    ConstantSensitivity,
    DiscountFunction,
    Exponential,
    GeneralizedHyperbolic,
    GridSampled,
    Impatient,
    Intensity,
    PowerOfBase,
    Truncated,
    Unit,
)
from .irr import (
    ConstantSensitivityFamily,
    DFamily,
    ExponentialFamily,
    GeneralizedHyperbolicFamily,
    PowerFamily,
)
from .ordering import (
    DFamilyRange,
    Finite,
    IntensityFamily,
    Product,
    ReductionFamily,
    ScenarioSet,
    TruncationFamily,
    Union,
)
from .valuation import NpvFunctional

__all__ = [
    "ParseError",
    "parse_cashflow",
    "load_cashflow",
    "emit_cashflow_json",
    "emit_cashflow_csv",
    "parse_discount",
    "parse_family",
    "parse_scenario",
    "load_spec",
    "discount_to_json",
    "to_jsonable",
    "dumps",
]


class ParseError(ValueError):
    """Malformed input, with enough context to locate the problem."""


# -- cash flows ---------------------------------------------------------------


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    try:
        out = float(value)
    except ValueError:
        raise ParseError(f"{where}: expected a number, got {value!r}") from None
    if not math.isfinite(out):
        raise ParseError(f"{where}: value must be finite")
    return out


def _flow(pairs, where: Callable[[int], str]) -> StepCashFlow:
    checked = []
    for i, (t, a) in enumerate(pairs):
        tt = _number(t, f"{where(i)} field 't'")
        if tt < 0:
            raise ParseError(f"{where(i)}: negative time {tt!r}")
        checked.append((tt, _number(a, f"{where(i)} field 'amount'")))
    return StepCashFlow(checked)


def _parse_json_flow(doc: Any) -> StepCashFlow:
    if not isinstance(doc, dict) or not isinstance(doc.get("transactions"), list):
        raise ParseError("cash-flow JSON needs a 'transactions' list")
    pairs = []
    for i, item in enumerate(doc["transactions"]):
        if not isinstance(item, dict) or "t" not in item or "amount" not in item:
            raise ParseError(f"transaction {i}: expected an object with 't' and 'amount'")
        pairs.append((item["t"], item["amount"]))
    return _flow(pairs, lambda i: f"transaction {i}")


def _parse_csv_flow(text: str) -> StepCashFlow:
    reader = csv.reader(_io.StringIO(text))
    rows = [r for r in reader if any(cell.strip() for cell in r)]
    if not rows or [c.strip() for c in rows[0]] != ["t", "amount"]:
        raise ParseError("line 1: CSV header must be 't,amount'")
    body = rows[1:]
    for i, r in enumerate(body):
        if len(r) != 2:
            raise ParseError(f"line {i + 2}: expected 2 fields, got {len(r)}")
    return _flow([(r[0].strip(), r[1].strip()) for r in body], lambda i: f"line {i + 2}")


def parse_cashflow(text: str) -> StepCashFlow:
    """Parse JSON or CSV text (detected from the first non-blank character)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
        return _parse_json_flow(doc)
    return _parse_csv_flow(text)


def load_cashflow(path: TUnion[str, Path]) -> StepCashFlow:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(f"{p}: {e.strerror}") from None
    try:
        return parse_cashflow(text)
    except ParseError as e:
        raise ParseError(f"{p}: {e}") from None


def emit_cashflow_json(x: StepCashFlow) -> str:
    doc = {"transactions": [{"t": t, "amount": a} for t, a in x]}
    return json.dumps(doc, sort_keys=True)


def emit_cashflow_csv(x: StepCashFlow) -> str:
    lines = ["t,amount"] + [f"{t!r},{a!r}" for t, a in x]
    return "\n".join(lines) + "\n"


# -- discount functions, families, scenario sets ------------------------------


def _get(doc: Dict, key: str, kind: str) -> Any:
    if key not in doc:
        raise ParseError(f"'{kind}' needs field '{key}'")
    return doc[key]


def _extended(value: Any, where: str) -> float:
    """A range endpoint: a number, ``null`` or ``"+inf"`` for unbounded."""
    if value is None or value == "+inf" or value == "inf":
        return math.inf
    if value == "-inf":
        return -math.inf
    return _number(value, where)


def _range(doc: Dict, key: str, kind: str):
    r = _get(doc, key, kind)
    if not isinstance(r, list) or len(r) != 2:
        raise ParseError(f"'{kind}' field '{key}' must be a [lo, hi] pair")
    return _extended(r[0], f"{kind}.{key}[0]"), _extended(r[1], f"{kind}.{key}[1]")


def _wrap(build: Callable[[], Any], kind: str) -> Any:
    try:
        return build()
    except ParseError:
        raise
    except (ValueError, TypeError) as e:
        raise ParseError(f"'{kind}': {e}") from None


def parse_discount(doc: Any) -> DiscountFunction:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("discount function must be an object with a 'kind'")
    kind = doc["kind"]
    num = lambda k: _number(_get(doc, k, kind), f"{kind}.{k}")
    builders = {
        "exponential": lambda: Exponential(num("rate")),
        "power": lambda: PowerOfBase(parse_discount(_get(doc, "base", kind)), num("exponent")),
        "constant_sensitivity": lambda: ConstantSensitivity(num("rate"), num("shape")),
        "generalized_hyperbolic": lambda: GeneralizedHyperbolic(num("rate"), num("shape")),
        "compound_annual": lambda: CompoundAnnual(num("rate")),
        "unit": Unit,
        "impatient": Impatient,
        "truncated": lambda: Truncated(
            parse_discount(_get(doc, "inner", kind)), num("horizon"), bool(doc.get("closed", True))
        ),
        "chi_mix": lambda: ChiMix(parse_discount(_get(doc, "inner", kind)), num("weight")),
        "intensity": lambda: Intensity(parse_discount(_get(doc, "inner", kind)), num("factor")),
        "grid": lambda: GridSampled(
            tuple(_number(v, f"{kind}.times") for v in _get(doc, "times", kind)),
            tuple(_number(v, f"{kind}.values") for v in _get(doc, "values", kind)),
        ),
    }
    if kind not in builders:
        raise ParseError(f"unknown discount kind {kind!r}; expected one of {sorted(builders)}")
    return _wrap(builders[kind], kind)


def parse_family(doc: Any) -> DFamily:
    if isinstance(doc, str):
        doc = {"kind": doc}
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("D-family must be an object with a 'kind'")
    kind = doc["kind"]
    beta = lambda: _number(_get(doc, "beta", kind), f"{kind}.beta")
    builders = {
        "exponential_family": ExponentialFamily,
        "constant_sensitivity_family": lambda: ConstantSensitivityFamily(beta()),
        "hyperbolic_family": lambda: GeneralizedHyperbolicFamily(beta()),
        "power_family": lambda: PowerFamily(parse_discount(_get(doc, "base", kind))),
    }
    if kind not in builders:
        raise ParseError(f"unknown family kind {kind!r}; expected one of {sorted(builders)}")
    return _wrap(builders[kind], kind)


def _optional_alpha(doc: Dict):
    return parse_discount(doc["alpha"]) if doc.get("alpha") is not None else None


def parse_scenario(doc: Any) -> ScenarioSet:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("scenario set must be an object with a 'kind'")
    kind = doc["kind"]

    def finite():
        members = _get(doc, "members", kind)
        if not isinstance(members, list) or not members:
            raise ParseError("'finite' needs a nonempty 'members' list")
        out = []
        for m in members:
            alpha = parse_discount(m)
            out.append(NpvFunctional(alpha, label=str(m.get("label", "")) if isinstance(m, dict) else ""))
        return Finite(tuple(out))

    builders = {
        "finite": finite,
        "d_family_range": lambda: DFamilyRange(
            parse_family(_get(doc, "family", kind)),
            _range(doc, "lambda", kind) if "lambda" in doc else (0.0, math.inf),
        ),
        "truncation": lambda: TruncationFamily(
            _optional_alpha(doc), _range(doc, "tau", kind), bool(doc.get("include_untruncated", True))
        ),
        "reduction": lambda: ReductionFamily(
            _optional_alpha(doc), _range(doc, "gamma", kind) if "gamma" in doc else (0.0, 1.0)
        ),
        "intensity": lambda: IntensityFamily(_optional_alpha(doc), _range(doc, "lambda", kind)),
        "product": lambda: Product(tuple(parse_scenario(c) for c in _get(doc, "components", kind))),
        "union": lambda: Union(tuple(parse_scenario(c) for c in _get(doc, "parts", kind))),
    }
    if kind not in builders:
        raise ParseError(f"unknown scenario kind {kind!r}; expected one of {sorted(builders)}")
    return _wrap(builders[kind], kind)


def load_spec(arg: str) -> Any:
    """A JSON document given inline, as a file path, or as a bare kind name."""
    text = arg.strip()
    if text.startswith("{") or text.startswith("["):
        source = text
    else:
        p = Path(arg)
        if p.is_file():
            try:
                source = p.read_text()
            except OSError as e:
                raise ParseError(f"{p}: {e.strerror}") from None
        else:
            return {"kind": text}
    try:
        return json.loads(source)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None


_KIND_OF = {
    Exponential: "exponential",
    PowerOfBase: "power",
    ConstantSensitivity: "constant_sensitivity",
    GeneralizedHyperbolic: "generalized_hyperbolic",
    CompoundAnnual: "compound_annual",
    Unit: "unit",
    Impatient: "impatient",
    Truncated: "truncated",
    ChiMix: "chi_mix",
    Intensity: "intensity",
    GridSampled: "grid",
}


def discount_to_json(alpha: DiscountFunction) -> Dict[str, Any]:
    """Inverse of :func:`parse_discount`."""
    doc: Dict[str, Any] = {"kind": _KIND_OF[type(alpha)]}
    for f in fields(alpha):
        v = getattr(alpha, f.name)
        doc[f.name] = discount_to_json(v) if isinstance(v, DiscountFunction) else (list(v) if isinstance(v, tuple) else v)
    return doc


# -- output -------------------------------------------------------------------


def to_jsonable(value: Any) -> Any:
    """Plain JSON types; infinities become ``"+inf"``/``"-inf"``."""
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        v = float(value)
        if math.isinf(v):
            return "+inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return v
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, StepCashFlow):
        return {"transactions": [{"t": t, "amount": a} for t, a in value]}
    if is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    return repr(value)


def dumps(value: Any) -> str:
    """Deterministic JSON (sorted keys) for reports."""
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2)
