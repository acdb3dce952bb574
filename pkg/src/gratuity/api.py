"""Stateless HTTP/JSON service over the scenario engine.

Bodies are parsed by hand rather than through a model layer so that every
rejection is a 400 shaped as {error, field} and every accepted number
reaches the library exactly as sent; responses carry full float precision
so they compare equal to direct library calls.
"""

from __future__ import annotations

import argparse
import json
import os
from dataclasses import dataclass
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .breakeven import breakeven
from .errors import BracketingError, ParameterError
from .loan import decide_loan, total_repayment
from .scenario import (
    CURVE_DEFAULT_RANGE,
    CURVE_DEFAULT_SAMPLES,
    compare,
    curve_to_dict,
    loan_decision_to_dict,
    phi_curve,
    report_to_dict,
)
from .schema import (
    parse_breakeven_request,
    parse_loan_request,
    parse_scenario,
)
from .tax import TaxPolicy

DEFAULT_BIND = "127.0.0.1:8000"
DEFAULT_CORS_ORIGIN = "http://localhost:5173"
DEFAULT_REQUEST_LIMIT = 64 * 1024

_BIND_ENV = "GRATUITY_BIND"
_CORS_ENV = "GRATUITY_CORS_ORIGIN"

_BOTSWANA = {"q": 1.0 / 3.0, "delta": 0.25, "n": 12}


@dataclass(frozen=True)
class ApiConfig:
    bind_address: str = DEFAULT_BIND
    cors_allowed_origin: str = DEFAULT_CORS_ORIGIN
    request_size_limit: int = DEFAULT_REQUEST_LIMIT


def create_app(config: ApiConfig | None = None) -> FastAPI:
    config = config or ApiConfig()
    app = FastAPI(title="gratuity", openapi_url=None, docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[config.cors_allowed_origin],
        allow_methods=["GET", "POST"],
        allow_headers=["content-type"],
    )

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        return JSONResponse(status_code=exc.status_code, content={"error": str(exc.detail)})

    @app.exception_handler(ParameterError)
    async def _parameter_error(request: Request, exc: ParameterError):
        return JSONResponse(
            status_code=400, content={"error": str(exc), "field": exc.field or "body"}
        )

    @app.exception_handler(BracketingError)
    async def _solver_error(request: Request, exc: BracketingError):
        return JSONResponse(status_code=500, content={"error": str(exc)})

    @app.get("/api/v1/health")
    async def health():
        return {"status": "ok"}

    @app.post("/api/v1/breakeven")
    async def post_breakeven(request: Request):
        n, policy, mode = parse_breakeven_request(await _read_json(request, config))
        result = breakeven(n, policy, mode)
        return {
            "rate": result.rate,
            "residual": result.residual,
            "mode": result.mode.value,
            "n": result.n,
        }

    @app.post("/api/v1/loan/decision")
    async def post_loan_decision(request: Request):
        loan, G, policy = parse_loan_request(await _read_json(request, config))
        body = loan_decision_to_dict(decide_loan(loan, G, policy))
        body["total_repayment"] = total_repayment(loan)
        return body

    @app.post("/api/v1/scenario")
    async def post_scenario(request: Request):
        scenario = parse_scenario(await _read_json(request, config))
        return report_to_dict(compare(scenario))

    @app.get("/api/v1/curve")
    async def get_curve(request: Request):
        params = request.query_params
        lo, hi = CURVE_DEFAULT_RANGE
        q = _query_number(params, "q", _BOTSWANA["q"])
        delta = _query_number(params, "delta", _BOTSWANA["delta"])
        n = _query_int(params, "n", _BOTSWANA["n"])
        r_min = _query_number(params, "min", lo)
        r_max = _query_number(params, "max", hi)
        samples = _query_int(params, "samples", CURVE_DEFAULT_SAMPLES)
        series = phi_curve(n, TaxPolicy(q, delta), r_min, r_max, samples)
        return curve_to_dict(series)

    return app


async def _read_json(request: Request, config: ApiConfig) -> Any:
    body = await request.body()
    if len(body) > config.request_size_limit:
        raise StarletteHTTPException(status_code=413, detail="request body too large")
    try:
        return json.loads(body)
    except ValueError:
        raise ParameterError("request body is not valid JSON", field="body") from None


def _query_number(params, key: str, default: float) -> float:
    raw = params.get(key)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ParameterError(f"{key} must be a number, got {raw!r}", field=key) from None


def _query_int(params, key: str, default: int) -> int:
    raw = params.get(key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(
            f"{key} must be an integer, got {raw!r}", field=key
        ) from None


app = create_app()


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="gratuity-api")
    parser.add_argument(
        "--bind",
        default=os.environ.get(_BIND_ENV, DEFAULT_BIND),
        help=f"host:port to serve on (default {DEFAULT_BIND}, env {_BIND_ENV})",
    )
    parser.add_argument(
        "--cors-origin",
        default=os.environ.get(_CORS_ENV, DEFAULT_CORS_ORIGIN),
        help=f"allowed browser origin (default {DEFAULT_CORS_ORIGIN}, env {_CORS_ENV})",
    )
    parser.add_argument(
        "--request-limit",
        type=int,
        default=DEFAULT_REQUEST_LIMIT,
        help="maximum request body size in bytes",
    )
    args = parser.parse_args(argv)
    host, _, port = args.bind.rpartition(":")
    if not host or not port.isdigit():
        parser.error(f"--bind must look like host:port, got {args.bind!r}")

    import uvicorn

    uvicorn.run(
        create_app(ApiConfig(args.bind, args.cors_origin, args.request_limit)),
        host=host,
        port=int(port),
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
