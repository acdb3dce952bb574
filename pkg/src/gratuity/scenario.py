"""Scenario assembly and reporting.

Combines the tax, break-even, and loan pieces into one comparable report
(should this employee take the gratuity monthly or wait?) and produces the
sampled decision-function curve behind the threshold charts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .breakeven import (
    BreakevenResult,
    CompoundingMode,
    breakeven,
    maturity_continuous,
    maturity_simple,
)
from .errors import ParameterError
from .loan import LoanDecision, LoanTerms, Verdict, decide_loan, decision_function
from .tax import GratuityTerms, TaxPolicy, _check_fraction, net_year_end

_VERDICT_TOL = 1e-9

CURVE_DEFAULT_RANGE = (0.0, 0.5)
CURVE_DEFAULT_SAMPLES = 201


@dataclass(frozen=True)
class SavingsTerms:
    """Deposit vehicle for the monthly installments: offered annual rate
    and how it compounds."""

    rate: float
    mode: CompoundingMode

    def __post_init__(self) -> None:
        _check_fraction("rate", self.rate)


@dataclass(frozen=True)
class Scenario:
    policy: TaxPolicy
    gratuity: GratuityTerms
    savings: SavingsTerms | None = None
    loan: LoanTerms | None = None

    def __post_init__(self) -> None:
        if self.savings is None and self.loan is None:
            raise ParameterError(
                "scenario needs at least one of savings or loan", field="scenario"
            )


@dataclass(frozen=True)
class SavingsAssessment:
    """Offered savings rate measured against the break-even rate.

    margin = offered - breakeven; positive margins favour installments.
    """

    verdict: Verdict
    breakeven_rate: float
    offered_rate: float
    margin: float
    mode: CompoundingMode


@dataclass(frozen=True)
class DecisionReport:
    savings_verdict: SavingsAssessment | None
    loan_verdict: LoanDecision | None
    annual_net: float
    installment_net_total_at_maturity: float
    notes: str


@dataclass(frozen=True)
class CurveSeries:
    """Decision-function samples on an evenly spaced loan-rate grid."""

    points: tuple[tuple[float, float], ...]
    delta: float
    q: float
    n: int


def compare(scenario: Scenario) -> DecisionReport:
    """Assess every component of the scenario and assemble the report.

    The savings verdict is TakeInstallments only when the offered rate
    strictly beats the break-even rate; ties within 1e-9 are Indifferent.
    """
    policy = scenario.policy
    terms = scenario.gratuity
    notes: list[str] = []

    savings = None
    if scenario.savings is not None:
        savings = _assess_savings(scenario.savings, terms.n, policy)
        notes.append(_savings_note(savings))

    loan = None
    if scenario.loan is not None:
        loan = decide_loan(scenario.loan, terms.G, policy)
        notes.append(_loan_note(loan, scenario.loan))

    rate, mode = (
        (scenario.savings.rate, scenario.savings.mode)
        if scenario.savings is not None
        else (0.0, CompoundingMode.SIMPLE)  # uninvested installments just add up
    )
    grow = maturity_simple if mode is CompoundingMode.SIMPLE else maturity_continuous
    return DecisionReport(
        savings_verdict=savings,
        loan_verdict=loan,
        annual_net=net_year_end(terms.G, policy),
        installment_net_total_at_maturity=grow(terms.G, terms.n, rate, policy),
        notes=" ".join(notes),
    )


def _assess_savings(
    savings: SavingsTerms, n: int, policy: TaxPolicy
) -> SavingsAssessment:
    result: BreakevenResult = breakeven(n, policy, savings.mode)
    margin = savings.rate - result.rate
    if abs(margin) <= _VERDICT_TOL:
        verdict = Verdict.INDIFFERENT
    elif margin > 0.0:
        verdict = Verdict.TAKE_INSTALLMENTS
    else:
        verdict = Verdict.WAIT_YEAR_END
    return SavingsAssessment(
        verdict=verdict,
        breakeven_rate=result.rate,
        offered_rate=savings.rate,
        margin=margin,
        mode=savings.mode,
    )


def _savings_note(savings: SavingsAssessment) -> str:
    lead = (
        f"Saving the installments at {savings.offered_rate:.2%} "
        f"({savings.mode.value}) against a break-even rate of "
        f"{savings.breakeven_rate:.2%}:"
    )
    if savings.verdict is Verdict.TAKE_INSTALLMENTS:
        return f"{lead} taking monthly installments comes out ahead."
    if savings.verdict is Verdict.WAIT_YEAR_END:
        return f"{lead} waiting for the tax-relieved year-end payment comes out ahead."
    return f"{lead} both options are equivalent."


def _loan_note(decision: LoanDecision, loan: LoanTerms) -> str:
    lead = f"Against a loan at {loan.r_c:.2%}:"
    if decision.verdict is Verdict.TAKE_INSTALLMENTS:
        return f"{lead} topping up each repayment with installments retires more principal."
    if decision.verdict is Verdict.WAIT_YEAR_END:
        return f"{lead} waiting and applying the year-end amount retires more principal."
    return f"{lead} both repayment strategies tie."


def phi_curve(
    n: int, policy: TaxPolicy, r_min: float, r_max: float, samples: int
) -> CurveSeries:
    """Sample the loan decision function on [r_min, r_max].

    The r_c = 0 endpoint takes the q*delta limit rather than dividing by
    zero, so curves may start exactly at the origin when q*delta = 0.
    """
    if not r_min >= 0.0:
        raise ParameterError(f"min must be >= 0, got {r_min!r}", field="min")
    if not r_max > r_min:
        raise ParameterError(
            f"max must exceed min, got min={r_min!r} max={r_max!r}", field="max"
        )
    if samples < 2:
        raise ParameterError(f"samples must be >= 2, got {samples!r}", field="samples")
    step = (r_max - r_min) / (samples - 1)
    points = []
    for i in range(samples):
        r = r_max if i == samples - 1 else r_min + i * step
        points.append((r, decision_function(r, n, policy)))
    return CurveSeries(
        points=tuple(points), delta=policy.delta, q=policy.q, n=n
    )


def report_to_dict(report: DecisionReport) -> dict:
    """Wire form of a report.  Absent components are omitted, never null."""
    body: dict = {}
    if report.savings_verdict is not None:
        s = report.savings_verdict
        body["savings_verdict"] = {
            "verdict": s.verdict.value,
            "breakeven_rate": s.breakeven_rate,
            "offered_rate": s.offered_rate,
            "margin": s.margin,
            "mode": s.mode.value,
        }
    if report.loan_verdict is not None:
        body["loan_verdict"] = loan_decision_to_dict(report.loan_verdict)
    body["annual_net"] = report.annual_net
    body["installment_net_total_at_maturity"] = report.installment_net_total_at_maturity
    body["notes"] = report.notes
    return body


def loan_decision_to_dict(decision: LoanDecision) -> dict:
    body: dict = {"phi": decision.phi_value}
    if decision.threshold is not None:
        body["threshold"] = decision.threshold
    body["verdict"] = decision.verdict.value
    body["margin"] = decision.margin
    return body


def curve_to_dict(series: CurveSeries) -> dict:
    return {
        "q": series.q,
        "delta": series.delta,
        "n": series.n,
        "points": [{"r_c": r, "phi": phi} for r, phi in series.points],
    }


def serialize_mapping(body: dict, format: str) -> bytes:
    """Render a response body as json (full float precision) or as
    key,value csv rows with 6-decimal numbers."""
    if format == "json":
        return _json_bytes(body)
    if format == "csv":
        lines = ["field,value"]
        for key, value in _flatten(body):
            lines.append(f"{key},{value}")
        return "\n".join(lines).encode() + b"\n"
    raise ParameterError(f"unsupported format {format!r}", field="format")


def serialize_report(report: DecisionReport, format: str) -> bytes:
    """Render a report as json, csv, or text.

    JSON keeps full float precision so parsing it recovers every field
    exactly; csv flattens to key,value rows with 6-decimal numbers; text is
    the human summary with percentages at 2 decimals.
    """
    if format in ("json", "csv"):
        return serialize_mapping(report_to_dict(report), format)
    if format == "text":
        lines = [report.notes] if report.notes else []
        lines.append(f"annual net at year end: {report.annual_net:.2f}")
        lines.append(
            "net installments at maturity: "
            f"{report.installment_net_total_at_maturity:.2f}"
        )
        return "\n".join(lines).encode() + b"\n"
    raise ParameterError(f"unsupported format {format!r}", field="format")


def serialize_curve(series: CurveSeries, format: str) -> bytes:
    """Render a curve as json or csv (header r_c,phi, 6-decimal rows)."""
    if format == "json":
        return _json_bytes(curve_to_dict(series))
    if format == "csv":
        lines = ["r_c,phi"]
        for r, phi in series.points:
            lines.append(f"{r:.6f},{phi:.6f}")
        return "\n".join(lines).encode() + b"\n"
    raise ParameterError(f"unsupported format {format!r}", field="format")


def _json_bytes(body: dict) -> bytes:
    return json.dumps(body, indent=2).encode() + b"\n"


def _flatten(body: dict, prefix: str = "") -> list[tuple[str, str]]:
    rows: list[tuple[str, str]] = []
    for key, value in body.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, f"{name}."))
        elif isinstance(value, float):
            rows.append((name, f"{value:.6f}"))
        else:
            rows.append((name, str(value).replace(",", ";")))
    return rows
