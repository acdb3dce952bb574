"""Shared wire formats.

One place defines how untrusted JSON bodies become domain objects and what
well-formed responses look like, so the HTTP service, the CLI, and any
client agree field for field.  Parse errors carry dotted paths such as
"loan.r_c" for field-level diagnostics.
"""

from __future__ import annotations

from typing import Any, Callable, TypeVar

from .breakeven import CompoundingMode
from .errors import ParameterError
from .loan import LoanTerms
from .scenario import SavingsTerms, Scenario
from .tax import BracketSchedule, GratuityTerms, TaxPolicy, effective_policy

T = TypeVar("T")

_FRACTION = {"type": "number", "minimum": 0, "exclusiveMaximum": 1}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_NON_NEGATIVE = {"type": "number", "minimum": 0}
_COUNT = {"type": "integer", "minimum": 1}
_NUMBER = {"type": "number"}
_MODE = {"enum": ["simple", "continuous"]}
_VERDICT = {"enum": ["WaitYearEnd", "TakeInstallments", "Indifferent"]}

_FLAT_POLICY = {
    "type": "object",
    "required": ["q", "delta"],
    "additionalProperties": False,
    "properties": {"q": _FRACTION, "delta": _FRACTION},
}
_BRACKET_POLICY = {
    "type": "object",
    "required": ["brackets", "gross", "q"],
    "additionalProperties": False,
    "properties": {
        "q": _FRACTION,
        "gross": _POSITIVE,
        "brackets": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "items": _NUMBER,
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}
_LOAN_TERMS = {
    "type": "object",
    "required": ["L", "m", "n", "r_c"],
    "additionalProperties": False,
    "properties": {"L": _POSITIVE, "m": _COUNT, "n": _COUNT, "r_c": _POSITIVE},
}

SCENARIO_REQUEST_SCHEMA = {
    "type": "object",
    "required": ["policy", "gratuity"],
    "additionalProperties": False,
    "properties": {
        "policy": {"oneOf": [_FLAT_POLICY, _BRACKET_POLICY]},
        "gratuity": {
            "type": "object",
            "required": ["G", "n"],
            "additionalProperties": False,
            "properties": {"G": _POSITIVE, "n": _COUNT},
        },
        "savings": {
            "type": "object",
            "required": ["rate", "mode"],
            "additionalProperties": False,
            "properties": {"rate": _FRACTION, "mode": _MODE},
        },
        "loan": _LOAN_TERMS,
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["annual_net", "installment_net_total_at_maturity", "notes"],
    "additionalProperties": False,
    "properties": {
        "savings_verdict": {
            "type": "object",
            "required": ["verdict", "breakeven_rate", "offered_rate", "margin", "mode"],
            "additionalProperties": False,
            "properties": {
                "verdict": _VERDICT,
                "breakeven_rate": _NON_NEGATIVE,
                "offered_rate": _NON_NEGATIVE,
                "margin": _NUMBER,
                "mode": _MODE,
            },
        },
        "loan_verdict": {
            "type": "object",
            "required": ["phi", "verdict", "margin"],
            "additionalProperties": False,
            "properties": {
                "phi": _NUMBER,
                "threshold": _POSITIVE,
                "verdict": _VERDICT,
                "margin": _NUMBER,
            },
        },
        "annual_net": _POSITIVE,
        "installment_net_total_at_maturity": _POSITIVE,
        "notes": {"type": "string"},
    },
}

BREAKEVEN_REQUEST_SCHEMA = {
    "type": "object",
    "required": ["q", "delta", "n", "mode"],
    "additionalProperties": False,
    "properties": {"q": _FRACTION, "delta": _FRACTION, "n": _COUNT, "mode": _MODE},
}

BREAKEVEN_RESPONSE_SCHEMA = {
    "type": "object",
    "required": ["rate", "residual", "mode", "n"],
    "additionalProperties": False,
    "properties": {
        "rate": _NON_NEGATIVE,
        "residual": _NUMBER,
        "mode": _MODE,
        "n": _COUNT,
    },
}

LOAN_REQUEST_SCHEMA = {
    "type": "object",
    "required": ["L", "m", "n", "r_c", "G", "q", "delta"],
    "additionalProperties": False,
    "properties": {
        "L": _POSITIVE,
        "m": _COUNT,
        "n": _COUNT,
        "r_c": _POSITIVE,
        "G": _NON_NEGATIVE,
        "q": _FRACTION,
        "delta": _FRACTION,
    },
}

LOAN_RESPONSE_SCHEMA = {
    "type": "object",
    "required": ["phi", "verdict", "margin", "total_repayment"],
    "additionalProperties": False,
    "properties": {
        "phi": _NUMBER,
        "threshold": _POSITIVE,
        "verdict": _VERDICT,
        "margin": _NUMBER,
        "total_repayment": _POSITIVE,
    },
}

CURVE_RESPONSE_SCHEMA = {
    "type": "object",
    "required": ["q", "delta", "n", "points"],
    "additionalProperties": False,
    "properties": {
        "q": _FRACTION,
        "delta": _FRACTION,
        "n": _COUNT,
        "points": {
            "type": "array",
            "minItems": 2,
            "items": {
                "type": "object",
                "required": ["r_c", "phi"],
                "additionalProperties": False,
                "properties": {"r_c": _NON_NEGATIVE, "phi": _NUMBER},
            },
        },
    },
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["error", "field"],
    "additionalProperties": False,
    "properties": {"error": {"type": "string"}, "field": {"type": "string"}},
}


def parse_scenario(body: Any) -> Scenario:
    """Build a Scenario from a request body, naming any bad field."""
    _check_object(body, "body")
    _check_keys(body, {"policy", "gratuity", "savings", "loan"}, "body")
    policy = parse_policy(_require(body, "policy", "body"))
    gratuity = parse_gratuity(_require(body, "gratuity", "body"))
    savings = parse_savings(body["savings"]) if "savings" in body else None
    loan = parse_loan_terms(body["loan"]) if "loan" in body else None
    return _scoped("scenario", lambda: Scenario(policy, gratuity, savings, loan))


def parse_policy(body: Any, path: str = "policy") -> TaxPolicy:
    """Accept either {q, delta} or {brackets, gross, q} reduced to an
    effective rate."""
    _check_object(body, path)
    if "brackets" in body:
        _check_keys(body, {"brackets", "gross", "q"}, path)
        schedule = _parse_brackets(_require(body, "brackets", path), f"{path}.brackets")
        gross = _number(_require(body, "gross", path), f"{path}.gross")
        q = _number(_require(body, "q", path), f"{path}.q")
        return _scoped(path, lambda: effective_policy(gross, schedule, q))
    _check_keys(body, {"q", "delta"}, path)
    q = _number(_require(body, "q", path), f"{path}.q")
    delta = _number(_require(body, "delta", path), f"{path}.delta")
    return _scoped(path, lambda: TaxPolicy(q, delta))


def parse_gratuity(body: Any, path: str = "gratuity") -> GratuityTerms:
    _check_object(body, path)
    _check_keys(body, {"G", "n"}, path)
    G = _number(_require(body, "G", path), f"{path}.G")
    n = _integer(_require(body, "n", path), f"{path}.n")
    return _scoped(path, lambda: GratuityTerms(G, n))


def parse_savings(body: Any, path: str = "savings") -> SavingsTerms:
    _check_object(body, path)
    _check_keys(body, {"rate", "mode"}, path)
    rate = _number(_require(body, "rate", path), f"{path}.rate")
    mode = parse_mode(_require(body, "mode", path), f"{path}.mode")
    return _scoped(path, lambda: SavingsTerms(rate, mode))


def parse_loan_terms(body: Any, path: str = "loan") -> LoanTerms:
    _check_object(body, path)
    _check_keys(body, {"L", "m", "n", "r_c"}, path)
    L = _number(_require(body, "L", path), f"{path}.L")
    m = _integer(_require(body, "m", path), f"{path}.m")
    n = _integer(_require(body, "n", path), f"{path}.n")
    r_c = _number(_require(body, "r_c", path), f"{path}.r_c")
    return _scoped(path, lambda: LoanTerms(L, m, n, r_c))


def parse_mode(value: Any, path: str = "mode") -> CompoundingMode:
    try:
        return CompoundingMode(value)
    except ValueError:
        raise ParameterError(
            f"{path} must be 'simple' or 'continuous', got {value!r}", field=path
        ) from None


def parse_breakeven_request(body: Any) -> tuple[int, TaxPolicy, CompoundingMode]:
    _check_object(body, "body")
    _check_keys(body, {"q", "delta", "n", "mode"}, "body")
    q = _number(_require(body, "q", "body"), "q")
    delta = _number(_require(body, "delta", "body"), "delta")
    n = _integer(_require(body, "n", "body"), "n")
    mode = parse_mode(_require(body, "mode", "body"))
    return n, _scoped_flat(lambda: TaxPolicy(q, delta)), mode


def parse_loan_request(body: Any) -> tuple[LoanTerms, float, TaxPolicy]:
    _check_object(body, "body")
    _check_keys(body, {"L", "m", "n", "r_c", "G", "q", "delta"}, "body")
    L = _number(_require(body, "L", "body"), "L")
    m = _integer(_require(body, "m", "body"), "m")
    n = _integer(_require(body, "n", "body"), "n")
    r_c = _number(_require(body, "r_c", "body"), "r_c")
    G = _number(_require(body, "G", "body"), "G")
    if G < 0.0:
        raise ParameterError(f"G must be >= 0, got {G!r}", field="G")
    q = _number(_require(body, "q", "body"), "q")
    delta = _number(_require(body, "delta", "body"), "delta")
    loan = _scoped_flat(lambda: LoanTerms(L, m, n, r_c))
    return loan, G, _scoped_flat(lambda: TaxPolicy(q, delta))


def _parse_brackets(value: Any, path: str) -> BracketSchedule:
    if not isinstance(value, (list, tuple)):
        raise ParameterError(f"{path} must be an array", field=path)
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, (list, tuple)) or len(row) != 2:
            raise ParameterError(
                f"{path}[{i}] must be a [lower_bound, marginal_rate] pair",
                field=f"{path}[{i}]",
            )
        rows.append(
            (
                _number(row[0], f"{path}[{i}][0]"),
                _number(row[1], f"{path}[{i}][1]"),
            )
        )
    return _scoped(path, lambda: BracketSchedule(tuple(rows)))


def _check_object(body: Any, path: str) -> None:
    if not isinstance(body, dict):
        raise ParameterError(f"{path} must be a JSON object", field=path)


def _check_keys(body: dict, allowed: set[str], path: str) -> None:
    extra = sorted(set(body) - allowed)
    if extra:
        raise ParameterError(
            f"unknown field {extra[0]!r}",
            field=extra[0] if path == "body" else f"{path}.{extra[0]}",
        )


def _require(body: dict, key: str, path: str) -> Any:
    if key not in body:
        field = key if path == "body" else f"{path}.{key}"
        raise ParameterError(f"missing required field {field!r}", field=field)
    return body[key]


def _number(value: Any, path: str) -> float:
    # bool is an int subclass; JSON true/false are not numbers here
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(f"{path} must be a number, got {value!r}", field=path)
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise ParameterError(f"{path} must be an integer, got {value!r}", field=path)
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise ParameterError(f"{path} must be an integer, got {value!r}", field=path)


def _scoped(path: str, make: Callable[[], T]) -> T:
    """Re-raise domain errors with the request-relative dotted path."""
    try:
        return make()
    except ParameterError as exc:
        if not exc.field or exc.field == path or path.endswith(f".{exc.field}"):
            field = path  # already names this location; don't double up
        elif exc.field.startswith(f"{path}."):
            field = exc.field
        else:
            field = f"{path}.{exc.field}"
        raise ParameterError(str(exc), field=field) from None


def _scoped_flat(make: Callable[[], T]) -> T:
    """Domain errors from flat request bodies keep their bare field name."""
    try:
        return make()
    except ParameterError as exc:
        raise ParameterError(str(exc), field=exc.field or "body") from None
