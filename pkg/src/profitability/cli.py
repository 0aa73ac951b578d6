"""Command-line front end.

Every subcommand reads one or two cash flows (JSON or CSV), runs the
requested metric and prints a table or a deterministic JSON document.
Exit status: 0 on success (incomparable or undetermined outcomes are
results, not failures), 1 on bad input, 2 when a project lies outside a
metric's natural domain.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import cashflow, indices, irr, ordering, payback
from .discount import CompoundAnnual, Impatient, Unit
from .io import ParseError, dumps, load_cashflow, load_spec, parse_discount, parse_family, parse_scenario, to_jsonable
from .results import DomainError, Verdict
from .valuation import NpvFunctional, npv

__all__ = ["main", "build_parser", "run"]

COMMANDS = ("npv", "irr", "pp", "dpp", "pi", "ri", "classify", "compare", "usury", "report")


def _alpha(arg: Optional[str], default=None):
    if arg is None:
        return default if default is not None else Unit()
    return parse_discount(load_spec(arg))


def _family(arg: Optional[str]):
    return parse_family(load_spec(arg or "exponential_family"))


def _grid(arg: Optional[str]) -> Optional[List[float]]:
    if arg is None:
        return None
    text = arg.strip()
    try:
        values = json.loads(text) if text.startswith("[") else [float(v) for v in text.split(",") if v.strip()]
        return [float(v) for v in values]
    except (ValueError, TypeError):
        raise ParseError(f"--grid: expected a comma-separated or JSON list of times, got {arg!r}") from None


def _verdict(v: Verdict) -> Any:
    return {Verdict.TRUE: True, Verdict.FALSE: False}.get(v, "undetermined")


def _intervals(acc: irr.AcceptanceSet) -> List[List[float]]:
    return [[lo, hi] for lo, hi in acc.intervals]


def _single(args) -> cashflow.StepCashFlow:
    if args.input is None:
        raise ParseError("--input is required")
    return load_cashflow(args.input)


# -- subcommands --------------------------------------------------------------


def cmd_npv(args) -> Dict[str, Any]:
    x = _single(args)
    alpha = _alpha(args.alpha)
    return {"npv": npv(alpha, x)}


def _irr_payload(args, x) -> Dict[str, Any]:
    fam = _family(args.family)
    acc = irr.acceptance_set(fam, x, args.lambda_max, args.tol)
    out = {
        "irr": irr.possesses_irr(fam, x, args.lambda_max, args.tol),
        "acceptance_set": _intervals(acc),
        "roots": list(acc.roots),
        "tangencies": list(acc.tangencies),
        "natural_domain": irr.in_natural_domain(fam, x, args.lambda_max, args.tol),
        "regular": _verdict(irr.is_regular(fam, x, args.lambda_max, args.tol)),
    }
    return out


def cmd_irr(args) -> Dict[str, Any]:
    x = _single(args)
    out = _irr_payload(args, x)
    if args.extended:
        out["natural_extension"] = irr.natural_extension_rr(_family(args.family), x, args.lambda_max, args.tol)
    return out


def cmd_pp(args) -> Dict[str, Any]:
    return {"pp": payback.payback_period(_single(args))}


def cmd_dpp(args) -> Dict[str, Any]:
    x = _single(args)
    alpha = _alpha(args.alpha)
    out: Dict[str, Any] = {"dpp": payback.dpp(alpha, x, args.tol)}
    if args.refined:
        r = payback.refined_dpp(alpha, x, args.tol)
        out["refined"] = None if r is None else {"tau": r.tau, "lambda": r.lam}
    if args.star:
        out["dpp_star"] = payback.dpp_star(alpha, x, args.tol)
    if args.classify:
        out["domain"] = payback.classify_dpp_domain(alpha, x, args.tol)
    if args.extended:
        out["natural_extension"] = payback.rdpp_natural_extension(alpha, x, args.tol)
    return out


def cmd_pi(args) -> Dict[str, Any]:
    x = _single(args)
    F = NpvFunctional(_alpha(args.alpha))
    out: Dict[str, Any] = {"pi": indices.pi(F, x)}
    if args.extended:
        chi = NpvFunctional(Impatient(), label="chi")
        out["natural_extension"] = indices.ri_natural_extension(F, chi, x, _grid(args.grid))
    return out


def cmd_ri(args) -> Dict[str, Any]:
    x = _single(args)
    if args.beta is None:
        raise ParseError("ri needs --beta (the discount function of the denominator)")
    F, G = NpvFunctional(_alpha(args.alpha)), NpvFunctional(_alpha(args.beta))
    out: Dict[str, Any] = {"ri": indices.ri(F, G, x)}
    if args.extended:
        grid = _grid(args.grid)
        bounds = indices.tilde_bounds(F, G, grid if grid is not None else indices.default_grid(x, (F.discount, G.discount)))
        out["w_inf"], out["w_sup"] = bounds.w_inf, bounds.w_sup
        out["w_raw"] = list(bounds.raw)
        out["natural_extension"] = indices.ri_natural_extension(F, G, x, grid)
    return out


def cmd_classify(args) -> Dict[str, Any]:
    x = _single(args)
    out = cashflow.classify(x).as_dict()
    out["P_plus"] = cashflow.is_in_P_plus(x)
    out["P_plusplus"] = cashflow.is_in_P_plusplus(x)
    out["sup_norm"] = cashflow.sup_norm(x) if x else 0.0
    return out


def cmd_compare(args) -> Dict[str, Any]:
    if not args.inputs or len(args.inputs) != 2:
        raise ParseError("compare needs exactly two --inputs")
    if args.scenario is None:
        raise ParseError("compare needs --scenario")
    x, y = (load_cashflow(p) for p in args.inputs)
    S = parse_scenario(load_spec(args.scenario))
    fn = ordering.sign_compare if args.sign else ordering.compare
    res = fn(S, x, y, args.tol)
    out: Dict[str, Any] = {
        "relation": res.relation,
        "accepts_x_only": res.accepts_x_only,
        "accepts_y_only": res.accepts_y_only,
        "exact": res.exact,
    }
    if args.hull:
        if not isinstance(S, ordering.Finite):
            raise ParseError("--hull needs a finite scenario set")
        h = ordering.hull_interval(S, x, y, args.tol)
        out["hull"] = {"feasible": h.feasible, "lower": h.lower, "upper": h.upper, "boundary": h.boundary}
    return out


def cmd_usury(args) -> Dict[str, Any]:
    x = _single(args)
    return {
        "classification": ordering.usury_classify(x, args.rate),
        "npv": npv(CompoundAnnual(args.rate), x),
    }


def _guard(fn):
    try:
        return fn()
    except DomainError as e:
        return {"domain_error": str(e)}


def cmd_report(args) -> Dict[str, Any]:
    """Every metric for one project; domain errors are reported inline."""
    x = _single(args)
    alpha = _alpha(args.alpha)
    fam = _family(args.family)
    F = NpvFunctional(alpha)
    chi = NpvFunctional(Impatient(), label="chi")
    out: Dict[str, Any] = {
        "transactions": [[t, a] for t, a in x],
        "classes": cmd_classify(args),
        "npv": npv(alpha, x),
        "irr": _irr_payload(args, x),
        "pp": payback.payback_period(x),
        "dpp": payback.dpp(alpha, x, args.tol),
        "pi": indices.pi(F, x),
        "usury": ordering.usury_classify(x),
    }
    out["irr"]["natural_extension"] = _guard(lambda: irr.natural_extension_rr(fam, x, args.lambda_max, args.tol))
    r = payback.refined_dpp(alpha, x, args.tol)
    out["refined_dpp"] = None if r is None else {"tau": r.tau, "lambda": r.lam}
    if x.is_discrete():
        out["dpp_star"] = payback.dpp_star(alpha, x, args.tol)
    if not alpha.is_impatient():
        out["dpp_domain"] = payback.classify_dpp_domain(alpha, x, args.tol)
        out["dpp_natural_extension"] = _guard(lambda: payback.rdpp_natural_extension(alpha, x, args.tol))
        out["pi_natural_extension"] = _guard(lambda: indices.ri_natural_extension(F, chi, x, _grid(args.grid)))
    return out


HANDLERS = {
    "npv": cmd_npv,
    "irr": cmd_irr,
    "pp": cmd_pp,
    "dpp": cmd_dpp,
    "pi": cmd_pi,
    "ri": cmd_ri,
    "classify": cmd_classify,
    "compare": cmd_compare,
    "usury": cmd_usury,
    "report": cmd_report,
}


# -- plumbing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="cash-flow file (JSON or CSV)")
    common.add_argument("--inputs", nargs="+", help="two cash-flow files (compare)")
    common.add_argument("--scenario", help="scenario-set JSON (file or inline)")
    common.add_argument("--alpha", help="discount function JSON, file or kind name (default: unit)")
    common.add_argument("--beta", help="second discount function (ri)")
    common.add_argument("--family", help="D-family JSON, file or kind name (default: exponential_family)")
    common.add_argument("--tol", type=float, default=1e-9, help="numerical tolerance (default 1e-9)")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--extended", action="store_true", help="use the natural extension")
    common.add_argument("--grid", help="explicit time grid, e.g. 0,1,2,5")
    common.add_argument("--lambda-max", type=float, default=None, help="minimum rate scan horizon")

    parser = argparse.ArgumentParser(prog="profitability", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=(HANDLERS[name].__doc__ or name).splitlines()[0])
        if name == "dpp":
            p.add_argument("--refined", action="store_true", help="report (tau, lambda)")
            p.add_argument("--star", action="store_true", help="report the interpolated payback")
            p.add_argument("--classify", action="store_true", help="report the natural-domain class")
        if name == "compare":
            p.add_argument("--sign", action="store_true", help="compare NPV signs instead of acceptance")
            p.add_argument("--hull", action="store_true", help="also test the convex-hull ordering")
        if name == "usury":
            p.add_argument("--rate", type=float, default=ordering.USURY_RATE)
    return parser


def _flatten(value: Any, prefix: str = "") -> List[tuple]:
    if isinstance(value, dict):
        rows = []
        for k in sorted(value):
            rows.extend(_flatten(value[k], f"{prefix}.{k}" if prefix else str(k)))
        return rows
    return [(prefix, value)]


def _cell(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, list):
        return "[" + ", ".join(_cell(i) for i in v) + "]"
    return str(v)


def render_table(payload: Dict[str, Any]) -> str:
    rows = _flatten(to_jsonable(payload))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in rows)


def run(args: argparse.Namespace) -> tuple:
    """Execute a parsed command; returns ``(exit_code, stdout_text, stderr_text)``."""
    if not args.tol > 0:
        return 1, "", "error: --tol must be positive\n"
    try:
        payload = HANDLERS[args.command](args)
    except DomainError as e:
        return 2, "", f"domain error: {e}\n"
    except (ParseError, ValueError, TypeError) as e:
        return 1, "", f"input error: {e}\n"
    text = dumps(payload) if args.format == "json" else render_table(payload)
    return 0, text + "\n", ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    code, out, err = run(args)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
