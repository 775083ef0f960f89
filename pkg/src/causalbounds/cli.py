"""Command-line interface.

Verbs: bounds, evaluate, simulate, compile, latex, serve.  Validation and
input problems exit 2 with a diagnostic on stderr; unexpected internal errors
exit 3.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import (
    bounds_payload,
    evaluate_bounds,
    latex_bounds,
    optimize_effect,
    render_bounds_text,
    simulate_bounds,
)
from .errors import CausalBoundsError, GeometryError
from .graph import default_effect_text, parse_graph_spec
from .problem import analyze_graph, problem_payload

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_params(path: str) -> dict[str, Fraction]:
    """name=value lines; values may be decimals or rationals like 1426/1888."""
    values: dict[str, Fraction] = {}
    for lineno, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CausalBoundsError(f"{path}:{lineno}: expected name=value, got {line!r}")
        name, _, value = line.partition("=")
        try:
            values[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise CausalBoundsError(f"{path}:{lineno}: cannot parse value {value.strip()!r}") from None
    return values


def _resolve_effect(graph_text: str, effect: str | None) -> str:
    if effect:
        return effect
    default = default_effect_text(parse_graph_spec(graph_text))
    if default is None:
        raise CausalBoundsError(
            "no --effect given and the graph declares no exposure/outcome pair")
    return default


def _build_problem(args):
    graph_text = _read_text(args.graph)
    effect = _resolve_effect(graph_text, args.effect)
    constraints = _read_text(args.constraints) if args.constraints else None
    return analyze_graph(graph_text, constraints, effect)


def _cmd_bounds(args) -> int:
    problem = _build_problem(args)
    bounds = optimize_effect(problem)
    emits = [e.strip() for e in args.emit.split(",")] if args.emit else ["text"]
    outputs = []
    for emit in emits:
        if emit == "text":
            outputs.append(render_bounds_text(bounds))
        elif emit == "latex":
            outputs.append(latex_bounds(bounds))
        elif emit == "json":
            outputs.append(canonical_json(bounds_payload(bounds)).rstrip("\n"))
        else:
            raise CausalBoundsError(f"unknown emit target {emit!r} (expected text, latex, json)")
    print("\n".join(outputs))
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    problem = _build_problem(args)
    bounds = optimize_effect(problem)
    values = _load_params(args.params)
    result = evaluate_bounds(bounds, values)
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"{result.lower:.2f} {result.upper:.2f}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.draws < 1:
        raise CausalBoundsError("--draws must be at least 1")
    problem = _build_problem(args)
    bounds = optimize_effect(problem)
    report = simulate_bounds(problem, bounds, n=args.draws, seed=args.seed)
    text = canonical_json(report.to_payload())
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}: {report.violations} violations in {report.n} draws")
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_compile(args) -> int:
    problem = _build_problem(args)
    print(canonical_json(problem_payload(problem)), end="")
    return EXIT_OK


def _cmd_latex(args) -> int:
    problem = _build_problem(args)
    bounds = optimize_effect(problem)
    print(latex_bounds(bounds))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(timeout_seconds=args.timeout)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causalbounds",
        description="Tight symbolic bounds on causal effects from a two-sided DAG",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, params=False):
        p.add_argument("--graph", required=True, help="graph specification file")
        p.add_argument("--effect", help="causal query, e.g. 'p{Y(X = 1) = 1} - p{Y(X = 0) = 1}'")
        p.add_argument("--constraints", help="file with one constraint per line")
        if params:
            p.add_argument("--params", required=True, help="file of name=value parameter lines")

    p = sub.add_parser("bounds", help="compute symbolic bounds")
    common(p)
    p.add_argument("--emit", default="text", help="comma-separated: text, latex, json")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("evaluate", help="compute bounds and evaluate at parameter values")
    common(p, params=True)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("simulate", help="stress-test bounds on random consistent distributions")
    common(p)
    p.add_argument("--seed", type=int, required=True, help="base seed (mandatory for reproducibility)")
    p.add_argument("--draws", type=int, default=100, help="number of simulated distributions")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compile", help="emit the assembled linear program as JSON")
    common(p)
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("latex", help="emit LaTeX for the bounds")
    common(p)
    p.set_defaults(func=_cmd_latex)

    p = sub.add_parser("serve", help="run the JSON-over-HTTP service (and studio, if built)")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--timeout", type=float, default=120.0, help="per-request compute timeout in seconds")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GeometryError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CausalBoundsError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
