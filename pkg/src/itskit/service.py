"""Stateless JSON-over-HTTP service exposing the analysis pipeline.

Endpoints (all under /v1): POST /v1/analyze runs the pipeline and returns
exactly the canonical report JSON; GET /v1/health reports liveness and
versions; GET /v1/schema serves the report schema. Invalid input yields 400
with the validation issues, numerical failures 422, oversized bodies 413.
"""

from __future__ import annotations

import io
import logging
import os
import time

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ._version import SCHEMA_VERSION, __version__
from .core import AnalysisError, TimeSeries, ValidationFailure
from .io import parse_csv
from .pipeline import AnalysisConfig, run_pipeline
from .report import REPORT_SCHEMA, emit_report

MAX_BODY_BYTES = 1 << 20

logger = logging.getLogger("itskit.service")


class AnalyzeSettings(BaseModel):
    """Analysis parameters, mirroring the CLI flags."""

    tet: int = Field(description="1-based index of the intervention month")
    before: int = 0
    after: int = 0
    start_month: int | None = None
    start_year: int | None = None
    censor_set: list[int] | None = None
    gls_pass: bool = False
    gls_iterations: int = 1


class AnalyzeRequest(BaseModel):
    """Either raw values (with calendar anchors) or CSV text, plus settings."""

    values: list[float] | None = None
    csv: str | None = None
    outcome_column: str = "outcome"
    date_column: str | None = None
    bounds: tuple[float, float] | None = None
    config: AnalyzeSettings


class _BodySizeLimit:
    """Reject requests whose declared body exceeds the limit (ASGI wrapper)."""

    def __init__(self, app, max_bytes: int):
        self.app = app
        self.max_bytes = max_bytes

    async def __call__(self, scope, receive, send):
        if scope["type"] == "http":
            for name, value in scope.get("headers", []):
                if name == b"content-length":
                    try:
                        length = int(value)
                    except ValueError:
                        length = 0
                    if length > self.max_bytes:
                        response = JSONResponse(
                            status_code=413,
                            content={
                                "error": "payload_too_large",
                                "detail": f"request body exceeds {self.max_bytes} bytes",
                            },
                        )
                        await response(scope, receive, send)
                        return
        await self.app(scope, receive, send)


def _build_series(req: AnalyzeRequest) -> TimeSeries:
    if (req.values is None) == (req.csv is None):
        raise ValidationFailure(
            ["provide exactly one of 'values' or 'csv' in the request body"]
        )
    if req.csv is not None:
        return parse_csv(
            io.StringIO(req.csv),
            outcome=req.outcome_column,
            date=req.date_column,
            start_month=req.config.start_month,
            start_year=req.config.start_year,
            bounds=req.bounds,
        )
    if req.config.start_month is None or req.config.start_year is None:
        raise ValidationFailure(
            ["start_month and start_year are required when sending raw values"]
        )
    try:
        return TimeSeries(
            values=req.values,
            start_month=req.config.start_month,
            start_year=req.config.start_year,
            bounds=req.bounds,
        )
    except ValueError as err:
        raise ValidationFailure([str(err)]) from None


def create_app(
    cors_origins: list[str] | None = None, max_body_bytes: int = MAX_BODY_BYTES
) -> FastAPI:
    """Build the service app; ``cors_origins`` defaults to $ITSKIT_CORS_ORIGINS."""
    app = FastAPI(title="itskit", version=__version__, docs_url=None, redoc_url=None)

    if cors_origins is None:
        env = os.environ.get("ITSKIT_CORS_ORIGINS", "")
        cors_origins = [o.strip() for o in env.split(",") if o.strip()]
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        issues = [
            f"{'.'.join(str(p) for p in err.get('loc', []))}: {err.get('msg', 'invalid')}"
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400, content={"error": "validation", "issues": issues}
        )

    @app.middleware("http")
    async def access_log(request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        logger.info(
            "%s %s -> %d (%.1f ms)",
            request.method,
            request.url.path,
            response.status_code,
            elapsed_ms,
        )
        return response

    @app.get("/v1/health")
    def health():
        return {
            "status": "ok",
            "version": __version__,
            "schema_version": SCHEMA_VERSION,
        }

    @app.get("/v1/schema")
    def schema():
        return REPORT_SCHEMA

    @app.post("/v1/analyze")
    def analyze(req: AnalyzeRequest):
        try:
            series = _build_series(req)
            config = AnalysisConfig(
                intervention=req.config.tet,
                before=req.config.before,
                after=req.config.after,
                censor=tuple(req.config.censor_set)
                if req.config.censor_set is not None
                else None,
                gls=req.config.gls_pass,
                gls_iterations=req.config.gls_iterations,
            )
            report = run_pipeline(series, config)
        except ValidationFailure as err:
            return JSONResponse(
                status_code=400,
                content={"error": "validation", "issues": list(err.issues)},
            )
        except AnalysisError as err:
            return JSONResponse(
                status_code=422, content={"error": "numerical", "detail": str(err)}
            )
        return Response(
            content=emit_report(report, "json"), media_type="application/json"
        )

    app.add_middleware(_BodySizeLimit, max_bytes=max_body_bytes)
    return app


app = create_app()


def main(argv=None) -> int:
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(prog="itskit-service")
    parser.add_argument("--host", default=os.environ.get("ITSKIT_HOST", "127.0.0.1"))
    parser.add_argument(
        "--port", type=int, default=int(os.environ.get("ITSKIT_PORT", "8000"))
    )
    parser.add_argument(
        "--cors-origin",
        action="append",
        default=None,
        help="allowed CORS origin (repeatable)",
    )
    args = parser.parse_args(argv)
    uvicorn.run(create_app(cors_origins=args.cors_origin), host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
