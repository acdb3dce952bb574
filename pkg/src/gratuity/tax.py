"""Tax parameters and the elementary net-of-tax cash amounts.

Two regimes apply to a year's accrued gratuity G: collected early, all of
it is taxed at the flat rate ``delta``; collected after at least one year,
a fraction ``q`` is exempt and only the remainder is taxed.  Everything
downstream compares cash flows built from these two net amounts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError


def _check_fraction(name: str, value: float) -> None:
    if not 0.0 <= value < 1.0:
        raise ParameterError(f"{name} must lie in [0, 1), got {value!r}", field=name)


def _check_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise ParameterError(f"{name} must be positive, got {value!r}", field=name)


def _check_count(name: str, value: int) -> None:
    if value < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value!r}", field=name)


@dataclass(frozen=True)
class TaxPolicy:
    """Exempt fraction ``q`` and flat tax rate ``delta``, both in [0, 1)."""

    q: float
    delta: float

    def __post_init__(self) -> None:
        _check_fraction("q", self.q)
        _check_fraction("delta", self.delta)


@dataclass(frozen=True)
class BracketSchedule:
    """Progressive tax schedule as (lower_bound, marginal_rate) pairs.

    Bounds must start at 0 and increase strictly; each rate applies to the
    slice of the amount between its bound and the next.
    """

    brackets: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "brackets", tuple((float(b), float(r)) for b, r in self.brackets)
        )
        if not self.brackets:
            raise ParameterError("bracket schedule must not be empty", field="brackets")
        if self.brackets[0][0] != 0.0:
            raise ParameterError("first bracket must start at 0", field="brackets")
        bounds = [bound for bound, _ in self.brackets]
        if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
            raise ParameterError(
                "bracket bounds must be strictly increasing", field="brackets"
            )
        for _, rate in self.brackets:
            _check_fraction("brackets", rate)

    def tax_on(self, gross: float) -> float:
        """Total bracket-wise tax due on ``gross``."""
        total = 0.0
        for i, (lower, rate) in enumerate(self.brackets):
            if gross <= lower:
                break
            upper = self.brackets[i + 1][0] if i + 1 < len(self.brackets) else gross
            total += rate * (min(gross, upper) - lower)
        return total


@dataclass(frozen=True)
class GratuityTerms:
    """One year's accrued gratuity ``G``, paid in ``n`` equal installments."""

    G: float
    n: int

    def __post_init__(self) -> None:
        _check_positive("G", self.G)
        _check_count("n", self.n)


def net_year_end(G: float, policy: TaxPolicy) -> float:
    """Net amount when the gratuity is collected after a full year.

    A fraction q escapes tax entirely and the rest is taxed at delta,
    leaving [q + (1-q)(1-delta)] * G.
    """
    _check_positive("G", G)
    return (policy.q + (1.0 - policy.q) * (1.0 - policy.delta)) * G


def net_early_lump(G: float, policy: TaxPolicy) -> float:
    """Net amount when the whole gratuity is collected early: (1-delta) * G."""
    _check_positive("G", G)
    return (1.0 - policy.delta) * G


def net_installment(G: float, n: int, policy: TaxPolicy) -> float:
    """Net value of one of ``n`` equal early installments: (1-delta) * G / n."""
    _check_positive("G", G)
    _check_count("n", n)
    return (1.0 - policy.delta) * G / n


def effective_policy(gross: float, schedule: BracketSchedule, q: float) -> TaxPolicy:
    """Fold a progressive schedule into a flat-rate policy for ``gross``.

    The effective rate is the total bracket-wise tax divided by the gross
    amount, so the single-rate formulas apply unchanged afterwards.
    """
    _check_positive("gross", gross)
    return TaxPolicy(q=q, delta=schedule.tax_on(gross) / gross)
