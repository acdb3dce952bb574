"""First-year loan mathematics.

Level-payment repayment totals, the amortization schedule, and the
wait-versus-installments comparison for a borrower who wants the gratuity
to help repay a loan: either commit the net installment (1-delta) G/n on
top of every payment, or wait and put the tax-relieved year-end amount
against the balance at month n.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .breakeven import ZERO_RATE
from .errors import BracketingError, ParameterError
from .rootfind import solve_bracketed
from .tax import TaxPolicy, _check_count, _check_positive

_VERDICT_TOL = 1e-9
_THRESHOLD_HI_MAX = 100.0


class Verdict(str, Enum):
    WAIT_YEAR_END = "WaitYearEnd"
    TAKE_INSTALLMENTS = "TakeInstallments"
    INDIFFERENT = "Indifferent"


@dataclass(frozen=True)
class LoanTerms:
    """Principal L repaid over m years in n level installments per year, at
    a nominal annual rate r_c compounded n times a year.

    Rates below 1e-12 are routed through r_c -> 0 limit formulas downstream
    so that tiny positive rates stay numerically stable.
    """

    L: float
    m: int
    n: int
    r_c: float

    def __post_init__(self) -> None:
        _check_positive("L", self.L)
        _check_count("m", self.m)
        _check_count("n", self.n)
        _check_positive("r_c", self.r_c)


@dataclass(frozen=True)
class AmortizationRow:
    k: int
    payment: float
    interest_portion: float
    principal_reduction: float
    balance_after: float


@dataclass(frozen=True)
class LoanDecision:
    """Outcome of the wait-versus-installments comparison for one loan.

    ``margin`` is R1 - R2 = phi(r_c) * G: the extra principal retired after
    one year by waiting (negative when installments win).
    """

    phi_value: float
    threshold: float | None
    verdict: Verdict
    margin: float


def total_repayment(loan: LoanTerms) -> float:
    """Total paid over the life of the loan under level installments.

    R = m r_c L (1+r_c/n)^{mn} / [(1+r_c/n)^{mn} - 1]; the r_c -> 0 limit
    is the principal itself.
    """
    if loan.r_c < ZERO_RATE:
        return loan.L
    growth = (1.0 + loan.r_c / loan.n) ** (loan.m * loan.n)
    return loan.m * loan.r_c * loan.L * growth / (growth - 1.0)


def amortization_schedule(loan: LoanTerms) -> list[AmortizationRow]:
    """Per-installment split of each level payment.

    The principal reductions form a geometric sequence with ratio
    (1 + r_c/n) and close the balance exactly at installment m*n.
    """
    periods = loan.m * loan.n
    payment = total_repayment(loan) / periods
    rate = loan.r_c / loan.n if loan.r_c >= ZERO_RATE else 0.0
    rows = []
    balance = loan.L
    for k in range(1, periods + 1):
        interest = rate * balance
        reduction = payment - interest
        balance -= reduction
        rows.append(AmortizationRow(k, payment, interest, reduction, balance))
    return rows


def _first_year_factor(loan: LoanTerms) -> float:
    """(n/r_c) [(1+r_c/n)^n - 1], the year-one accumulation factor; its
    r_c -> 0 limit is n."""
    if loan.r_c < ZERO_RATE:
        return float(loan.n)
    return loan.n / loan.r_c * ((1.0 + loan.r_c / loan.n) ** loan.n - 1.0)


def reduction_wait_year(loan: LoanTerms, G: float, policy: TaxPolicy) -> float:
    """Principal retired in year one when the gratuity is taken at year end.

    The scheduled reductions of the first n installments, plus the net
    year-end amount [1-(1-q)delta] G applied against the balance at month n.
    """
    _check_gratuity(G)
    payment = total_repayment(loan) / (loan.m * loan.n)
    scheduled = _first_year_factor(loan) * (payment - loan.r_c / loan.n * loan.L)
    net_gratuity = (policy.q + (1.0 - policy.q) * (1.0 - policy.delta)) * G
    return scheduled + net_gratuity


def reduction_installments(loan: LoanTerms, G: float, policy: TaxPolicy) -> float:
    """Principal retired in year one when every payment is topped up with
    the net gratuity installment (1-delta) G/n."""
    _check_gratuity(G)
    payment = total_repayment(loan) / (loan.m * loan.n)
    extra = (1.0 - policy.delta) * G / loan.n
    return _first_year_factor(loan) * (payment + extra - loan.r_c / loan.n * loan.L)


def decision_function(r_c: float, n: int, policy: TaxPolicy) -> float:
    """Per-unit-gratuity advantage of waiting: R1 - R2 = phi(r_c) * G.

    phi(r_c) = [1-(1-q)delta] - ((1-delta)/r_c) [(1+r_c/n)^n - 1]; the
    removable singularity at 0 is filled with its limit q*delta.  Positive
    favours waiting for the year-end relief, negative favours monthly
    receipt.
    """
    _check_count("n", n)
    if r_c < 0.0:
        raise ParameterError(f"r_c must be >= 0, got {r_c!r}", field="r_c")
    if r_c < ZERO_RATE:
        return policy.q * policy.delta
    growth = (1.0 + r_c / n) ** n - 1.0
    return 1.0 - (1.0 - policy.q) * policy.delta - (1.0 - policy.delta) / r_c * growth


def decision_threshold(n: int, policy: TaxPolicy) -> float | None:
    """Loan rate at which phi crosses zero.

    phi is strictly decreasing from phi(0+) = q*delta, so the positive root
    is unique.  Returns None when q*delta = 0: phi never goes positive and
    installments are never worse.
    """
    _check_count("n", n)
    if policy.q == 0.0 or policy.delta == 0.0:
        return None

    def phi(r_c: float) -> float:
        return decision_function(r_c, n, policy)

    lo, hi = 1e-9, 1.0
    if phi(lo) <= 0.0:  # root pinned against zero; tighten from below
        lo, hi = 0.0, lo
    else:
        while phi(hi) > 0.0:
            if hi >= _THRESHOLD_HI_MAX:
                raise BracketingError(
                    f"decision function has no root below {_THRESHOLD_HI_MAX}"
                )
            hi = min(2.0 * hi, _THRESHOLD_HI_MAX)
    return solve_bracketed(phi, lo, hi, 1e-12)


def decide_loan(loan: LoanTerms, G: float, policy: TaxPolicy) -> LoanDecision:
    """Assess taking the gratuity monthly against waiting, for this loan."""
    _check_gratuity(G)
    phi = decision_function(loan.r_c, loan.n, policy)
    if phi > _VERDICT_TOL:
        verdict = Verdict.WAIT_YEAR_END
    elif phi < -_VERDICT_TOL:
        verdict = Verdict.TAKE_INSTALLMENTS
    else:
        verdict = Verdict.INDIFFERENT
    return LoanDecision(
        phi_value=phi,
        threshold=decision_threshold(loan.n, policy),
        verdict=verdict,
        margin=phi * G,
    )


def _check_gratuity(G: float) -> None:
    if G < 0.0:
        raise ParameterError(f"G must be >= 0, got {G!r}", field="G")
