"""Wire-format parsing and the shared schema documents."""

from __future__ import annotations

import jsonschema
import pytest

from gratuity import CompoundingMode, ParameterError
from gratuity.schema import (
    BREAKEVEN_REQUEST_SCHEMA,
    BREAKEVEN_RESPONSE_SCHEMA,
    CURVE_RESPONSE_SCHEMA,
    ERROR_SCHEMA,
    LOAN_REQUEST_SCHEMA,
    LOAN_RESPONSE_SCHEMA,
    REPORT_SCHEMA,
    SCENARIO_REQUEST_SCHEMA,
    parse_breakeven_request,
    parse_loan_request,
    parse_mode,
    parse_scenario,
)

GOOD_SCENARIO = {
    "policy": {"q": 1 / 3, "delta": 0.25},
    "gratuity": {"G": 1200.0, "n": 12},
    "savings": {"rate": 0.05, "mode": "simple"},
    "loan": {"L": 100000.0, "m": 20, "n": 12, "r_c": 0.12},
}


class TestParseScenario:
    def test_full_request(self):
        scenario = parse_scenario(GOOD_SCENARIO)
        assert scenario.policy.delta == 0.25
        assert scenario.gratuity.n == 12
        assert scenario.savings.mode is CompoundingMode.SIMPLE
        assert scenario.loan.r_c == 0.12

    def test_bracket_policy_request(self):
        body = {
            "policy": {"brackets": [[0, 0], [36000, 0.25]], "gross": 48000, "q": 1 / 3},
            "gratuity": {"G": 1200.0, "n": 12},
            "savings": {"rate": 0.05, "mode": "simple"},
        }
        scenario = parse_scenario(body)
        assert scenario.policy.delta == pytest.approx(0.0625)

    def test_request_validates_against_its_own_schema(self):
        jsonschema.validate(GOOD_SCENARIO, SCENARIO_REQUEST_SCHEMA)

    @pytest.mark.parametrize(
        "mutate, field",
        [
            (lambda b: b.pop("policy"), "policy"),
            (lambda b: b.pop("gratuity"), "gratuity"),
            (lambda b: b["policy"].pop("delta"), "policy.delta"),
            (lambda b: b["policy"].update(delta=1.5), "policy.delta"),
            (lambda b: b["policy"].update(q="a third"), "policy.q"),
            (lambda b: b["gratuity"].update(G=0), "gratuity.G"),
            (lambda b: b["gratuity"].update(n=2.5), "gratuity.n"),
            (lambda b: b["savings"].update(mode="weekly"), "savings.mode"),
            (lambda b: b["loan"].update(r_c=True), "loan.r_c"),
            (lambda b: b["loan"].update(m=0), "loan.m"),
            (lambda b: b.update(surprise=1), "surprise"),
            (lambda b: b["loan"].update(fees=1.0), "loan.fees"),
        ],
    )
    def test_bad_fields_name_their_dotted_path(self, mutate, field):
        body = {
            "policy": dict(GOOD_SCENARIO["policy"]),
            "gratuity": dict(GOOD_SCENARIO["gratuity"]),
            "savings": dict(GOOD_SCENARIO["savings"]),
            "loan": dict(GOOD_SCENARIO["loan"]),
        }
        mutate(body)
        with pytest.raises(ParameterError) as err:
            parse_scenario(body)
        assert err.value.field == field

    def test_savings_and_loan_both_optional_but_not_both_absent(self):
        body = {"policy": {"q": 0.5, "delta": 0.2}, "gratuity": {"G": 1.0, "n": 1}}
        with pytest.raises(ParameterError) as err:
            parse_scenario(body)
        assert err.value.field == "scenario"

    def test_non_object_rejected(self):
        with pytest.raises(ParameterError) as err:
            parse_scenario([1, 2, 3])
        assert err.value.field == "body"


class TestFlatRequests:
    def test_breakeven_request(self):
        n, policy, mode = parse_breakeven_request(
            {"q": 0.5, "delta": 0.2, "n": 4, "mode": "continuous"}
        )
        assert (n, policy.q, policy.delta) == (4, 0.5, 0.2)
        assert mode is CompoundingMode.CONTINUOUS

    def test_breakeven_request_names_flat_fields(self):
        with pytest.raises(ParameterError) as err:
            parse_breakeven_request({"q": 1.5, "delta": 0.2, "n": 4, "mode": "simple"})
        assert err.value.field == "q"
        with pytest.raises(ParameterError) as err:
            parse_breakeven_request({"delta": 0.2, "n": 4, "mode": "simple"})
        assert err.value.field == "q"

    def test_loan_request(self):
        loan, G, policy = parse_loan_request(
            {"L": 1e5, "m": 20, "n": 12, "r_c": 0.12, "G": 12000, "q": 1 / 3, "delta": 0.25}
        )
        assert loan.m == 20 and G == 12000.0 and policy.q == pytest.approx(1 / 3)

    def test_loan_request_rejects_negative_gratuity(self):
        with pytest.raises(ParameterError) as err:
            parse_loan_request(
                {"L": 1e5, "m": 20, "n": 12, "r_c": 0.12, "G": -1, "q": 0.3, "delta": 0.25}
            )
        assert err.value.field == "G"

    def test_mode_parsing(self):
        assert parse_mode("simple") is CompoundingMode.SIMPLE
        with pytest.raises(ParameterError) as err:
            parse_mode("weekly")
        assert err.value.field == "mode"


class TestSchemaDocuments:
    @pytest.mark.parametrize(
        "schema",
        [
            SCENARIO_REQUEST_SCHEMA,
            REPORT_SCHEMA,
            BREAKEVEN_REQUEST_SCHEMA,
            BREAKEVEN_RESPONSE_SCHEMA,
            LOAN_REQUEST_SCHEMA,
            LOAN_RESPONSE_SCHEMA,
            CURVE_RESPONSE_SCHEMA,
            ERROR_SCHEMA,
        ],
    )
    def test_documents_are_valid_json_schema(self, schema):
        jsonschema.Draft202012Validator.check_schema(schema)

    def test_error_shape(self):
        jsonschema.validate({"error": "x", "field": "q"}, ERROR_SCHEMA)
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate({"error": "x"}, ERROR_SCHEMA)
