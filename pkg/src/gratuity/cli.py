"""Command-line front door.

Subcommands: breakeven, loan, compare, schedule, curve.  Results go to
stdout; validation problems exit 2 with a one-line message on stderr;
anything unexpected exits 1.  Omitted tax parameters fall back to the
Botswana defaults (q=1/3, delta=1/4, n=12), or to the JSON file named by
GRATUITY_DEFAULTS, and the effective parameters are always echoed (to
stderr for machine formats) so defaults are never silent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import IO

from .breakeven import CompoundingMode, breakeven
from .errors import ParameterError
from .loan import (
    LoanTerms,
    amortization_schedule,
    decide_loan,
    total_repayment,
)
from .scenario import (
    CURVE_DEFAULT_RANGE,
    CURVE_DEFAULT_SAMPLES,
    SavingsTerms,
    Scenario,
    compare,
    loan_decision_to_dict,
    phi_curve,
    serialize_curve,
    serialize_mapping,
    serialize_report,
)
from .tax import BracketSchedule, GratuityTerms, TaxPolicy, effective_policy

_BUILTIN_DEFAULTS = {"q": 1.0 / 3.0, "delta": 0.25, "n": 12}
_DEFAULTS_ENV = "GRATUITY_DEFAULTS"


def main(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # argparse already printed its diagnostic
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        defaults = _load_defaults(os.environ.get(_DEFAULTS_ENV))
        handler = _COMMANDS[args.command]
        handler(args, defaults)
        return 0
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # anything non-parametric is an internal error
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gratuity",
        description=(
            "Is a monthly gratuity economically sound against a tax-relieved "
            "year-end payment?  Break-even savings rates, loan decisions, "
            "amortization schedules, and decision-function curves."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("breakeven", help="break-even savings rate for n installments")
    _add_policy_flags(p)
    p.add_argument(
        "--mode",
        choices=["simple", "continuous"],
        default="simple",
        help="interest model (default simple)",
    )
    _add_format_flag(p)

    p = sub.add_parser("loan", help="wait vs. installments for a running loan")
    _add_loan_flags(p, with_n=False)
    p.add_argument("--G", type=_amount, required=True, help="annual gratuity amount")
    _add_policy_flags(p)
    _add_format_flag(p)

    p = sub.add_parser("compare", help="full scenario report (savings and/or loan)")
    _add_policy_flags(p)
    p.add_argument("--G", type=_amount, required=True, help="annual gratuity amount")
    p.add_argument("--gross", type=_amount, help="gross amount for a bracket schedule")
    p.add_argument(
        "--brackets",
        help="progressive schedule as lower:rate pairs, e.g. 0:0,36000:25%%",
    )
    p.add_argument("--savings-rate", type=_rate, help="offered savings rate")
    p.add_argument(
        "--savings-mode",
        choices=["simple", "continuous"],
        help="savings interest model (default simple)",
    )
    p.add_argument("--L", type=_amount, help="loan principal")
    p.add_argument("--m", type=int, help="loan term in years")
    p.add_argument("--r-c", type=_rate, help="loan rate, nominal annual")
    p.add_argument(
        "--loan-n",
        type=int,
        help="loan payments per year (defaults to the gratuity's n)",
    )
    _add_format_flag(p)

    p = sub.add_parser("schedule", help="amortization schedule for a loan")
    _add_loan_flags(p, with_n=True)
    _add_format_flag(p)

    p = sub.add_parser("curve", help="decision function phi sampled over loan rates")
    _add_policy_flags(p)
    lo, hi = CURVE_DEFAULT_RANGE
    p.add_argument("--min", type=_rate, default=lo, help=f"lowest rate (default {lo})")
    p.add_argument("--max", type=_rate, default=hi, help=f"highest rate (default {hi})")
    p.add_argument(
        "--samples",
        type=int,
        default=CURVE_DEFAULT_SAMPLES,
        help=f"grid size (default {CURVE_DEFAULT_SAMPLES})",
    )
    _add_format_flag(p)
    return parser


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=_rate, help="tax-exempt fraction (default 1/3)")
    p.add_argument("--delta", type=_rate, help="tax rate (default 1/4)")
    p.add_argument("--n", type=int, help="installments per year (default 12)")


def _add_loan_flags(p: argparse.ArgumentParser, with_n: bool) -> None:
    p.add_argument("--L", type=_amount, required=True, help="loan principal")
    p.add_argument("--m", type=int, required=True, help="loan term in years")
    p.add_argument(
        "--r-c", type=_rate, required=True, help="loan rate, nominal annual"
    )
    if with_n:
        p.add_argument("--n", type=int, help="payments per year (default 12)")


def _add_format_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=["text", "json", "csv"],
        default="text",
        help="output format (default text)",
    )


def _rate(text: str) -> float:
    """Rates and fractions read as decimals ('0.25') or percents ('25%')."""
    raw = text.strip()
    try:
        if raw.endswith("%"):
            return float(raw[:-1]) / 100.0
        return float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is neither a decimal nor a percentage"
        ) from None


def _amount(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None


def _load_defaults(path: str | None) -> dict:
    """Optional JSON file overriding the built-in q/delta/n defaults."""
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            body = json.load(handle)
    except (OSError, ValueError) as exc:
        raise ParameterError(
            f"cannot read {_DEFAULTS_ENV} file {path!r}: {exc}", field=_DEFAULTS_ENV
        ) from None
    if not isinstance(body, dict):
        raise ParameterError(
            f"{_DEFAULTS_ENV} file must hold a JSON object", field=_DEFAULTS_ENV
        )
    extra = sorted(set(body) - set(_BUILTIN_DEFAULTS))
    if extra:
        raise ParameterError(
            f"{_DEFAULTS_ENV} file has unknown key {extra[0]!r}", field=_DEFAULTS_ENV
        )
    for key, value in body.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParameterError(
                f"{_DEFAULTS_ENV} key {key!r} must be a number", field=_DEFAULTS_ENV
            )
    if "n" in body:
        body["n"] = int(body["n"])
    return body


def _pick(args: argparse.Namespace, defaults: dict, key: str):
    value = getattr(args, key)
    if value is not None:
        return value
    return defaults.get(key, _BUILTIN_DEFAULTS[key])


def _echo(params: dict, stream: IO[str]) -> None:
    rendered = " ".join(
        f"{k}={v if isinstance(v, str) else repr(v)}" for k, v in params.items()
    )
    print(f"parameters: {rendered}", file=stream)


def _machine_out(params: dict, body: dict, fmt: str) -> None:
    _echo(params, sys.stderr)
    print(serialize_mapping(body, fmt).decode(), end="")


def _cmd_breakeven(args: argparse.Namespace, defaults: dict) -> None:
    q, delta, n = _pick(args, defaults, "q"), _pick(args, defaults, "delta"), _pick(args, defaults, "n")
    mode = CompoundingMode(args.mode)
    result = breakeven(n, TaxPolicy(q, delta), mode)
    params = {"q": q, "delta": delta, "n": n, "mode": mode.value}
    if args.format == "text":
        _echo(params, sys.stdout)
        print(f"break-even rate: {result.rate:.2%} ({result.rate!r})")
        print(f"residual: {result.residual!r}")
        return
    body = {"rate": result.rate, "residual": result.residual, "mode": mode.value, "n": n}
    _machine_out(params, body, args.format)


def _cmd_loan(args: argparse.Namespace, defaults: dict) -> None:
    q, delta, n = _pick(args, defaults, "q"), _pick(args, defaults, "delta"), _pick(args, defaults, "n")
    policy = TaxPolicy(q, delta)
    loan = LoanTerms(args.L, args.m, n, args.r_c)
    decision = decide_loan(loan, args.G, policy)
    total = total_repayment(loan)
    params = {
        "L": loan.L, "m": loan.m, "n": n, "r_c": loan.r_c,
        "G": args.G, "q": q, "delta": delta,
    }
    if args.format == "text":
        _echo(params, sys.stdout)
        print(f"phi: {decision.phi_value!r}")
        if decision.threshold is not None:
            print(f"threshold: {decision.threshold:.2%} ({decision.threshold!r})")
        else:
            print("threshold: none (installments never lose)")
        print(f"verdict: {decision.verdict.value}")
        print(f"margin: {decision.margin:.2f} (first-year principal edge of waiting)")
        print(f"total repayment: {total:.2f}")
        return
    body = loan_decision_to_dict(decision)
    body["total_repayment"] = total
    _machine_out(params, body, args.format)


def _cmd_compare(args: argparse.Namespace, defaults: dict) -> None:
    q, delta, n = _pick(args, defaults, "q"), _pick(args, defaults, "delta"), _pick(args, defaults, "n")
    params: dict = {"q": q}
    if args.brackets is not None or args.gross is not None:
        if args.brackets is None or args.gross is None:
            raise ParameterError(
                "brackets and gross must be given together", field="brackets"
            )
        if args.delta is not None:
            raise ParameterError(
                "delta cannot be combined with a bracket schedule", field="delta"
            )
        policy = effective_policy(args.gross, _parse_brackets_flag(args.brackets), q)
        params.update(brackets=args.brackets, gross=args.gross, effective_delta=policy.delta)
    else:
        policy = TaxPolicy(q, delta)
        params["delta"] = delta
    params.update(n=n, G=args.G)

    savings = None
    if args.savings_rate is not None:
        savings = SavingsTerms(
            args.savings_rate, CompoundingMode(args.savings_mode or "simple")
        )
        params.update(savings_rate=savings.rate, savings_mode=savings.mode.value)
    elif args.savings_mode is not None:
        raise ParameterError(
            "savings-mode requires savings-rate", field="savings-mode"
        )

    loan = None
    loan_flags = (args.L, args.m, args.r_c)
    if any(v is not None for v in loan_flags):
        if any(v is None for v in loan_flags):
            raise ParameterError("loan needs all of L, m, and r_c", field="L")
        loan = LoanTerms(args.L, args.m, args.loan_n if args.loan_n is not None else n, args.r_c)
        params.update(L=loan.L, m=loan.m, loan_n=loan.n, r_c=loan.r_c)
    elif args.loan_n is not None:
        raise ParameterError("loan-n requires L, m, and r_c", field="loan-n")

    report = compare(Scenario(policy, GratuityTerms(args.G, n), savings, loan))
    if args.format == "text":
        _echo(params, sys.stdout)
        print(serialize_report(report, "text").decode(), end="")
        return
    _echo(params, sys.stderr)
    print(serialize_report(report, args.format).decode(), end="")


def _cmd_schedule(args: argparse.Namespace, defaults: dict) -> None:
    n = _pick(args, defaults, "n")
    loan = LoanTerms(args.L, args.m, n, args.r_c)
    rows = amortization_schedule(loan)
    params = {"L": loan.L, "m": loan.m, "n": n, "r_c": loan.r_c}
    if args.format == "text":
        _echo(params, sys.stdout)
        print(f"{'k':>5}  {'payment':>14}  {'interest':>14}  {'principal':>14}  {'balance':>14}")
        for row in rows:
            print(
                f"{row.k:>5}  {row.payment:>14.2f}  {row.interest_portion:>14.2f}"
                f"  {row.principal_reduction:>14.2f}  {row.balance_after:>14.2f}"
            )
        print(f"total repayment: {total_repayment(loan):.2f}")
        return
    _echo(params, sys.stderr)
    if args.format == "csv":
        print("k,payment,interest,principal_reduction,balance")
        for row in rows:
            print(
                f"{row.k},{row.payment!r},{row.interest_portion!r}"
                f",{row.principal_reduction!r},{row.balance_after!r}"
            )
        return
    body = {
        "total_repayment": total_repayment(loan),
        "rows": [
            {
                "k": row.k,
                "payment": row.payment,
                "interest": row.interest_portion,
                "principal_reduction": row.principal_reduction,
                "balance": row.balance_after,
            }
            for row in rows
        ],
    }
    print(json.dumps(body, indent=2))


def _cmd_curve(args: argparse.Namespace, defaults: dict) -> None:
    q, delta, n = _pick(args, defaults, "q"), _pick(args, defaults, "delta"), _pick(args, defaults, "n")
    series = phi_curve(n, TaxPolicy(q, delta), args.min, args.max, args.samples)
    params = {
        "q": q, "delta": delta, "n": n,
        "min": args.min, "max": args.max, "samples": args.samples,
    }
    if args.format == "text":
        _echo(params, sys.stdout)
        print(f"{'r_c':>10}  {'phi':>10}")
        for r, phi in series.points:
            print(f"{r:>10.6f}  {phi:>+10.6f}")
        return
    _echo(params, sys.stderr)
    print(serialize_curve(series, args.format).decode(), end="")


def _parse_brackets_flag(text: str) -> BracketSchedule:
    rows = []
    for i, chunk in enumerate(text.split(",")):
        parts = chunk.split(":")
        if len(parts) != 2:
            raise ParameterError(
                f"brackets entry {chunk!r} is not lower:rate", field="brackets"
            )
        try:
            rows.append((_amount(parts[0]), _rate(parts[1])))
        except argparse.ArgumentTypeError as exc:
            raise ParameterError(
                f"brackets entry {chunk!r}: {exc}", field="brackets"
            ) from None
    return BracketSchedule(tuple(rows))


_COMMANDS = {
    "breakeven": _cmd_breakeven,
    "loan": _cmd_loan,
    "compare": _cmd_compare,
    "schedule": _cmd_schedule,
    "curve": _cmd_curve,
}


if __name__ == "__main__":
    sys.exit(main())
