"""JSON-over-HTTP service exposing the analysis pipeline.

Stateless: every request is an isolated computation; identical inputs yield
identical bounds payloads (the CLI emits the same bytes for the same inputs).
Endpoints are versioned under /api and CORS is enabled for the studio origin.
"""

from __future__ import annotations

import concurrent.futures
import time
from fractions import Fraction
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import __version__
from .bounds import (
    bounds_payload,
    evaluate_bounds,
    latex_bounds,
    optimize_effect,
    render_bounds_text,
    simulate_bounds,
)
from .errors import CausalBoundsError, GeometryError, InputSyntaxError, ValidationFailure
from .graph import default_effect_text, parse_graph_spec
from .problem import analyze_graph

_EXECUTOR = concurrent.futures.ThreadPoolExecutor(max_workers=4)


class AnalysisOptions(BaseModel):
    emit: list[str] = Field(default_factory=lambda: ["json"])
    timeout_seconds: float | None = None


class AnalysisRequest(BaseModel):
    graph: str
    effect: str | None = None
    constraints: str | None = None
    options: AnalysisOptions = Field(default_factory=AnalysisOptions)


class EvaluateRequest(BaseModel):
    graph: str
    effect: str | None = None
    constraints: str | None = None
    params: dict[str, float | str]


class SimulateRequest(BaseModel):
    graph: str
    effect: str | None = None
    constraints: str | None = None
    n: int = 100
    seed: int


def _error_detail(exc: Exception) -> dict:
    if isinstance(exc, ValidationFailure):
        return {
            "code": "VALIDATION",
            "message": str(exc),
            "violations": [
                {"code": v.code, "message": v.message, "element": v.element}
                for v in exc.report.violations
            ],
        }
    if isinstance(exc, InputSyntaxError):
        return {
            "code": "SYNTAX",
            "message": str(exc),
            "location": {"line": exc.line, "column": exc.column},
            "violations": [],
        }
    return {"code": "INVALID_INPUT", "message": str(exc), "violations": []}


def _resolve_effect(graph_text: str, effect: str | None) -> str:
    if effect:
        return effect
    default = default_effect_text(parse_graph_spec(graph_text))
    if default is None:
        raise CausalBoundsError("no effect given and the graph declares no exposure/outcome pair")
    return default


def _run_with_timeout(fn, timeout: float):
    future = _EXECUTOR.submit(fn)
    try:
        return future.result(timeout=timeout)
    except concurrent.futures.TimeoutError:
        future.cancel()
        raise HTTPException(status_code=408, detail={"code": "TIMEOUT", "message": f"computation exceeded {timeout} s"}) from None


def create_app(timeout_seconds: float = 120.0, studio_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="causalbounds", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/api/analyze")
    def analyze(req: AnalysisRequest):
        if not req.options.emit:
            raise HTTPException(status_code=400, detail={
                "code": "INVALID_INPUT", "message": "at least one emit target required", "violations": []})
        timeout = req.options.timeout_seconds or timeout_seconds
        if timeout <= 0:
            raise HTTPException(status_code=400, detail={
                "code": "INVALID_INPUT", "message": "timeout must be positive", "violations": []})
        start = time.perf_counter()

        def compute():
            effect = _resolve_effect(req.graph, req.effect)
            problem = analyze_graph(req.graph, req.constraints, effect)
            return effect, problem, optimize_effect(problem)

        try:
            effect, problem, bounds = _run_with_timeout(compute, timeout)
        except CausalBoundsError as exc:
            raise HTTPException(status_code=400, detail=_error_detail(exc)) from exc
        except GeometryError as exc:
            raise HTTPException(status_code=500, detail={"code": "INTERNAL", "message": str(exc)}) from exc

        response = {
            "status": "ok",
            "effect": effect,
            "bounds": bounds_payload(bounds),
            "parameters": [
                {"name": p.name, "interpretation": p.interpretation} for p in problem.parameters
            ],
            "constraint_strings": list(problem.constraint_strings),
            "logs": list(problem.logs) + list(bounds.logs),
            "timing_seconds": time.perf_counter() - start,
            "warnings": [],
        }
        if "text" in req.options.emit:
            response["text"] = render_bounds_text(bounds)
        if "latex" in req.options.emit:
            response["latex"] = latex_bounds(bounds)
        return response

    @app.post("/api/evaluate")
    def evaluate(req: EvaluateRequest):
        def compute():
            effect = _resolve_effect(req.graph, req.effect)
            problem = analyze_graph(req.graph, req.constraints, effect)
            bounds = optimize_effect(problem)
            values = {
                name: Fraction(v) if isinstance(v, str) else v for name, v in req.params.items()
            }
            return evaluate_bounds(bounds, values)

        try:
            result = _run_with_timeout(compute, timeout_seconds)
        except CausalBoundsError as exc:
            raise HTTPException(status_code=400, detail=_error_detail(exc)) from exc
        return {"lower": result.lower, "upper": result.upper, "warnings": list(result.warnings)}

    @app.post("/api/simulate")
    def simulate(req: SimulateRequest):
        if req.n < 1:
            raise HTTPException(status_code=400, detail={
                "code": "INVALID_INPUT", "message": "n must be at least 1", "violations": []})

        def compute():
            effect = _resolve_effect(req.graph, req.effect)
            problem = analyze_graph(req.graph, req.constraints, effect)
            bounds = optimize_effect(problem)
            return simulate_bounds(problem, bounds, n=req.n, seed=req.seed)

        try:
            report = _run_with_timeout(compute, timeout_seconds)
        except CausalBoundsError as exc:
            raise HTTPException(status_code=400, detail=_error_detail(exc)) from exc
        return report.to_payload()

    static_dir = Path(studio_dir) if studio_dir else Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if static_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="studio")

    return app
