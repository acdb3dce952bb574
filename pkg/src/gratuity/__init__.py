"""Monthly gratuity or tax-relieved year-end payment?

An employee whose year-end gratuity G enjoys an exemption (fraction q tax
free, the rest taxed at delta) can instead draw it monthly, fully taxed.
This package computes the savings rates at which the two options break
even, the loan rates at which monthly receipt starts to win for a
borrower, and full what-if reports behind a CLI and an HTTP API.
"""

from .breakeven import (
    BreakevenResult,
    CompoundingMode,
    breakeven,
    breakeven_installments_continuous,
    breakeven_installments_simple,
    breakeven_lump_continuous,
    breakeven_lump_simple,
    maturity_continuous,
    maturity_simple,
)
from .errors import BracketingError, ParameterError
from .loan import (
    AmortizationRow,
    LoanDecision,
    LoanTerms,
    Verdict,
    amortization_schedule,
    decide_loan,
    decision_function,
    decision_threshold,
    reduction_installments,
    reduction_wait_year,
    total_repayment,
)
from .scenario import (
    CurveSeries,
    DecisionReport,
    SavingsAssessment,
    SavingsTerms,
    Scenario,
    compare,
    phi_curve,
    serialize_curve,
    serialize_report,
)
from .tax import (
    BracketSchedule,
    GratuityTerms,
    TaxPolicy,
    effective_policy,
    net_early_lump,
    net_installment,
    net_year_end,
)

__version__ = "1.0.0"

__all__ = [
    "AmortizationRow",
    "BracketingError",
    "BracketSchedule",
    "BreakevenResult",
    "CompoundingMode",
    "CurveSeries",
    "DecisionReport",
    "GratuityTerms",
    "LoanDecision",
    "LoanTerms",
    "ParameterError",
    "SavingsAssessment",
    "SavingsTerms",
    "Scenario",
    "TaxPolicy",
    "Verdict",
    "amortization_schedule",
    "breakeven",
    "breakeven_installments_continuous",
    "breakeven_installments_simple",
    "breakeven_lump_continuous",
    "breakeven_lump_simple",
    "compare",
    "decide_loan",
    "decision_function",
    "decision_threshold",
    "effective_policy",
    "maturity_continuous",
    "maturity_simple",
    "net_early_lump",
    "net_installment",
    "net_year_end",
    "phi_curve",
    "reduction_installments",
    "reduction_wait_year",
    "serialize_curve",
    "serialize_report",
    "total_repayment",
]
