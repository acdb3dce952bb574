"""Break-even savings rates.

The minimum interest a savings account must pay for early or installment
receipt of the gratuity to match the tax-relieved year-end lump sum.

Timing convention: installment t = 1 arrives at the start of the year and
earns a full year of interest; installment t = n earns interest for 1/n of
a year.  "Monthly" therefore means start-of-month receipt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import BracketingError, ParameterError
from .rootfind import solve_bracketed
from .tax import TaxPolicy, _check_count, _check_positive, net_year_end

# Below this rate the closed forms would hit a 0/0; use the analytic limits.
ZERO_RATE = 1e-12

_SOLVER_TOL = 1e-12
_BRACKET_HI_MAX = 10.0


class CompoundingMode(str, Enum):
    SIMPLE = "simple"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class BreakevenResult:
    """A break-even rate plus the back-substitution residual of its
    defining equation (0 up to float error for closed forms)."""

    rate: float
    mode: CompoundingMode
    n: int
    residual: float


def maturity_simple(G: float, n: int, r: float, policy: TaxPolicy) -> float:
    """Year-end value of the n net installments under simple interest.

    Installment t grows by the factor 1 + ((n-t+1)/n) r; the arithmetic
    series sums to (1-delta) G [1 + ((n+1)/(2n)) r].
    """
    _check_args(G, n, r)
    return (1.0 - policy.delta) * G * (1.0 + (n + 1) / (2 * n) * r)


def maturity_continuous(G: float, n: int, r: float, policy: TaxPolicy) -> float:
    """Year-end value of the n net installments under continuous compounding.

    Geometric series: (1-delta) (G/n) e^{r/n} (e^r - 1)/(e^{r/n} - 1), with
    the r -> 0 limit (1-delta) G.
    """
    _check_args(G, n, r)
    if r < ZERO_RATE:
        return (1.0 - policy.delta) * G
    return (
        (1.0 - policy.delta)
        * (G / n)
        * math.exp(r / n)
        * math.expm1(r)
        / math.expm1(r / n)
    )


def breakeven_lump_simple(policy: TaxPolicy) -> BreakevenResult:
    """Rate at which an early lump sum at simple interest matches the
    year-end net: r = q delta / (1 - delta)."""
    rate = policy.q * policy.delta / (1.0 - policy.delta)
    return _finish(rate, CompoundingMode.SIMPLE, 1, policy)


def breakeven_lump_continuous(policy: TaxPolicy) -> BreakevenResult:
    """Rate at which a continuously compounded early lump sum matches the
    year-end net: r = ln{[1 - (1-q) delta] / (1 - delta)}."""
    rate = math.log((1.0 - (1.0 - policy.q) * policy.delta) / (1.0 - policy.delta))
    return _finish(rate, CompoundingMode.CONTINUOUS, 1, policy)


def breakeven_installments_simple(n: int, policy: TaxPolicy) -> BreakevenResult:
    """Rate at which n installments at simple interest match the year-end
    net: r = 2 n q delta / [(n+1)(1 - delta)].  n = 1 recovers the lump
    formula exactly."""
    _check_count("n", n)
    rate = 2.0 * n * policy.q * policy.delta / ((n + 1) * (1.0 - policy.delta))
    return _finish(rate, CompoundingMode.SIMPLE, n, policy)


def breakeven_installments_continuous(n: int, policy: TaxPolicy) -> BreakevenResult:
    """Rate at which n continuously compounded installments match the
    year-end net.

    The matching condition has no closed form; the maturity value is
    strictly increasing in r, so a deterministic bisection on a sign-change
    bracket always converges.  With q = 0 or delta = 0 both sides are equal
    at r = 0 already and the root is exactly 0.
    """
    _check_count("n", n)
    if policy.q == 0.0 or policy.delta == 0.0:
        return _finish(0.0, CompoundingMode.CONTINUOUS, n, policy)

    target = net_year_end(1.0, policy)

    def gap(r: float) -> float:
        return target - maturity_continuous(1.0, n, r, policy)

    lo, hi = 1e-9, 1.0
    if gap(lo) <= 0.0:  # root pinned against zero; tighten from below
        lo, hi = 0.0, lo
    else:
        while gap(hi) > 0.0:
            if hi >= _BRACKET_HI_MAX:
                raise BracketingError(
                    f"no break-even rate below {_BRACKET_HI_MAX} for n={n}, {policy}"
                )
            hi = min(2.0 * hi, _BRACKET_HI_MAX)
    rate = solve_bracketed(gap, lo, hi, _SOLVER_TOL)
    return _finish(rate, CompoundingMode.CONTINUOUS, n, policy)


def breakeven(n: int, policy: TaxPolicy, mode: CompoundingMode) -> BreakevenResult:
    """Break-even rate for n installments under the given compounding."""
    if mode is CompoundingMode.SIMPLE:
        return breakeven_installments_simple(n, policy)
    return breakeven_installments_continuous(n, policy)


def _finish(
    rate: float, mode: CompoundingMode, n: int, policy: TaxPolicy
) -> BreakevenResult:
    maturity = (
        maturity_simple if mode is CompoundingMode.SIMPLE else maturity_continuous
    )
    residual = net_year_end(1.0, policy) - maturity(1.0, n, rate, policy)
    return BreakevenResult(rate=rate, mode=mode, n=n, residual=residual)


def _check_args(G: float, n: int, r: float) -> None:
    _check_positive("G", G)
    _check_count("n", n)
    if r < 0.0:
        raise ParameterError(f"r must be >= 0, got {r!r}", field="r")
