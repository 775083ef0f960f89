"""Symbolic bound production, evaluation, typesetting, and simulation."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import EvaluationError, GeometryError
from .expressions import (
    LinearExpression,
    canonicalize_expression,
    expression_payload,
    format_fraction,
    make_expression,
    render_expression,
)
from .polytope import LOWER, UPPER, build_dual, dd_vertex_enumeration, evaluate_dual_vertex
from .problem import LinearCausalProblem, Parameter


@dataclass(frozen=True)
class SymbolicBoundPair:
    """Tight bounds: lower = max over ``lower``, upper = min over ``upper``."""

    lower: tuple[LinearExpression, ...]
    upper: tuple[LinearExpression, ...]
    parameters: tuple[Parameter, ...]
    logs: tuple[str, ...] = ()
    timings: tuple[tuple[str, float], ...] = ()  # excluded from serialized payloads


def _expression_order_key(e: LinearExpression) -> str:
    return render_expression(e)


def _vertex_expressions(problem: LinearCausalProblem, sense: str) -> tuple[list[LinearExpression], dict]:
    dual = build_dual(problem, sense)
    vrep = dd_vertex_enumeration(dual.polyhedron)
    if vrep.lineality:
        raise GeometryError(
            "dual polyhedron has a lineality space despite rank reduction; "
            "cannot extract bounds")
    if vrep.is_empty:
        raise GeometryError("dual polyhedron is empty; the primal LP is unbounded")
    expressions = [evaluate_dual_vertex(dual, v) for v in vrep.vertices]
    unique = sorted(set(expressions), key=_expression_order_key, reverse=True)
    stats = {"vertices": len(vrep.vertices), "rays": len(vrep.rays)}
    return unique, stats


def optimize_effect(problem: LinearCausalProblem) -> SymbolicBoundPair:
    """Vertex enumeration of the dual polytope, one bound list per sense."""
    start = time.perf_counter()
    if problem.objective and len(set(problem.objective)) == 1:
        # constant query: theta = c * sum(q) = c exactly
        const = make_expression(problem.objective[0], {})
        logs = ("objective is constant; bounds coincide without enumeration",)
        return SymbolicBoundPair(
            lower=(const,), upper=(const,), parameters=problem.parameters, logs=logs,
            timings=(("total", time.perf_counter() - start),))

    t0 = time.perf_counter()
    lower, lo_stats = _vertex_expressions(problem, LOWER)
    t1 = time.perf_counter()
    upper, hi_stats = _vertex_expressions(problem, UPPER)
    t2 = time.perf_counter()

    logs = (
        f"dual dimension: {len(problem.kept_rows)} (from {len(problem.matrix)} rows)",
        f"lower: {lo_stats['vertices']} vertices, {lo_stats['rays']} rays, {len(lower)} expressions",
        f"upper: {hi_stats['vertices']} vertices, {hi_stats['rays']} rays, {len(upper)} expressions",
    )
    timings = (("lower", t1 - t0), ("upper", t2 - t1), ("total", t2 - start))
    return SymbolicBoundPair(
        lower=tuple(lower), upper=tuple(upper), parameters=problem.parameters,
        logs=logs, timings=timings)


# ---------------------------------------------------------------------------
# Numeric evaluation


@dataclass(frozen=True)
class BoundsEvaluation:
    lower: float
    upper: float
    warnings: tuple[str, ...] = ()

    def __iter__(self) -> Iterator[float]:
        return iter((self.lower, self.upper))


def _to_number(value) -> Fraction | float:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    return float(value)


def evaluate_bounds(bounds: SymbolicBoundPair, values: Mapping[str, object]) -> BoundsEvaluation:
    """Plug parameter values into the symbolic bounds.

    Every parameter must be present with a value in [0, 1].  Right-side
    outcome probabilities should sum to one within each left-side
    configuration; a deviation beyond 1e-9 is reported as a warning, not a
    failure.  Exact inputs (Fraction, int, or strings like "1/3") are
    evaluated exactly.
    """
    numbers: dict[str, Fraction | float] = {}
    for p in bounds.parameters:
        if p.name not in values:
            raise EvaluationError(f"missing value for parameter {p.name}")
        v = _to_number(values[p.name])
        if not 0 <= v <= 1:
            raise EvaluationError(f"value for {p.name} is outside [0, 1]: {v}")
        numbers[p.name] = v

    warnings = []
    groups: dict[tuple[int, ...], list[str]] = {}
    for p in bounds.parameters:
        groups.setdefault(p.left_values, []).append(p.name)
    for left_values, names in groups.items():
        total = sum(float(numbers[n]) for n in names)
        if abs(total - 1.0) > 1e-9:
            label = ", ".join(str(v) for v in left_values) or "(none)"
            warnings.append(
                f"probabilities for left-side configuration {label} sum to {total:.12g}, not 1")

    lower = max(e.evaluate(numbers) for e in bounds.lower)
    upper = min(e.evaluate(numbers) for e in bounds.upper)
    return BoundsEvaluation(lower=float(lower), upper=float(upper), warnings=tuple(warnings))


def evaluate_bounds_exact(bounds: SymbolicBoundPair, values: Mapping[str, Fraction]) -> tuple[Fraction, Fraction]:
    lower = max(e.evaluate(values) for e in bounds.lower)
    upper = min(e.evaluate(values) for e in bounds.upper)
    return lower, upper


# ---------------------------------------------------------------------------
# Rendering


def render_bounds_text(bounds: SymbolicBoundPair) -> str:
    """Console block in the MAX { ... } / MIN { ... } layout."""
    def block(title: str, exprs: tuple[LinearExpression, ...], wrapper: str) -> str:
        if len(exprs) == 1:
            return f"{title} = {render_expression(exprs[0])}"
        body = ",\n".join(f"  {render_expression(e)}" for e in exprs)
        return f"{title} =  \n{wrapper} {{\n{body}\n}}"

    return (
        block("lower bound", bounds.lower, "MAX")
        + "\n" + "-" * 40 + "\n"
        + block("upper bound", bounds.upper, "MIN")
    )


def latex_bounds(bounds: SymbolicBoundPair) -> str:
    """LaTeX rendering with parameters replaced by probability statements."""
    substitutions = {p.name: p.interpretation for p in bounds.parameters}

    def side(title: str, exprs: tuple[LinearExpression, ...], op: str) -> str:
        if len(exprs) == 1:
            return f"\\mbox{{{title}}} &= {render_expression(exprs[0], substitutions)}"
        cases = ",\\\\ \n".join(f"  {render_expression(e, substitutions)}" for e in exprs)
        return (
            f"\\mbox{{{title}}} &= \\mbox{{{op}}} \\left. \\begin{{cases}} \n"
            f"{cases} \\end{{cases}} \\right\\}}"
        )

    return (
        "\\begin{align*}\n"
        + side("Lower bound", bounds.lower, "max")
        + " \\\\\n"
        + side("Upper bound", bounds.upper, "min")
        + "\n\\end{align*}"
    )


def latex_case_strings(bounds: SymbolicBoundPair, sense: str) -> list[str]:
    substitutions = {p.name: p.interpretation for p in bounds.parameters}
    exprs = bounds.lower if sense == LOWER else bounds.upper
    return [render_expression(e, substitutions) for e in exprs]


def bounds_payload(bounds: SymbolicBoundPair) -> dict:
    """Canonical JSON-ready form; deterministic for identical logical inputs."""
    return {
        "lower": [expression_payload(e) for e in bounds.lower],
        "upper": [expression_payload(e) for e in bounds.upper],
        "lower_text": [render_expression(e) for e in bounds.lower],
        "upper_text": [render_expression(e) for e in bounds.upper],
        "parameters": [
            {"name": p.name, "interpretation": p.interpretation} for p in bounds.parameters
        ],
        "logs": list(bounds.logs),
    }


# ---------------------------------------------------------------------------
# Simulation


@dataclass(frozen=True)
class SimulationDraw:
    parameters: dict[str, float]
    theta: float
    lower: float
    upper: float
    violated: bool

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class SimulationReport:
    n: int
    seed: int
    draws: tuple[SimulationDraw, ...]
    violations: int

    @property
    def max_width(self) -> float:
        return max(d.width for d in self.draws)

    @property
    def mean_width(self) -> float:
        return sum(d.width for d in self.draws) / len(self.draws)

    def to_payload(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "violations": self.violations,
            "max_width": self.max_width,
            "mean_width": self.mean_width,
            "draws": [
                {
                    "parameters": d.parameters,
                    "theta": d.theta,
                    "lower": d.lower,
                    "upper": d.upper,
                    "width": d.width,
                    "violated": d.violated,
                }
                for d in self.draws
            ],
        }


def _simplex_point(rng: random.Random, k: int) -> list[Fraction]:
    """Uniform point on the k-simplex via normalized exponential spacings,
    converted exactly to rationals so downstream checks stay exact."""
    weights = [Fraction(rng.expovariate(1.0)) for _ in range(k)]
    total = sum(weights)
    return [w / total for w in weights]


def simulate_bounds(
    problem: LinearCausalProblem,
    bounds: SymbolicBoundPair,
    n: int,
    seed: int,
) -> SimulationReport:
    """Draw response-vector distributions consistent with the assumptions,
    derive the observable parameters, and check the bounds against the true
    effect.  Violations are counted with exact rational arithmetic, so a sound
    bound reports zero.  Reproducible: draw i uses substream (seed, i).
    """
    if n < 1:
        raise ValueError("draw count must be at least 1")
    draws = []
    violations = 0
    for i in range(n):
        rng = random.Random(f"{seed}:{i}")
        q = _simplex_point(rng, len(problem.q_names))
        # left-side marginal: sampled for completeness of the generated world
        if problem.left_configs and len(problem.left_configs) > 1:
            _simplex_point(rng, len(problem.left_configs))
        values: dict[str, Fraction] = {}
        for row_index, p in enumerate(problem.parameters, start=1):
            row = problem.matrix[row_index]
            values[p.name] = sum((qj for cj, qj in zip(row, q) if cj), Fraction(0))
        theta = sum((c * qj for c, qj in zip(problem.objective, q)), Fraction(0))
        lower, upper = evaluate_bounds_exact(bounds, values)
        violated = not (lower <= theta <= upper)
        if violated:
            violations += 1
        draws.append(SimulationDraw(
            parameters={name: float(v) for name, v in values.items()},
            theta=float(theta),
            lower=float(lower),
            upper=float(upper),
            violated=violated,
        ))
    return SimulationReport(n=n, seed=seed, draws=tuple(draws), violations=violations)
