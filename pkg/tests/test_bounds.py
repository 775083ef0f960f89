import random
from fractions import Fraction

import numpy as np
import pytest

from causalbounds import (
    EvaluationError,
    LinearExpression,
    analyze_graph,
    bounds_payload,
    canonicalize_expression,
    evaluate_bounds,
    evaluate_bounds_exact,
    latex_bounds,
    make_expression,
    optimize_effect,
    render_bounds_text,
    render_expression,
    simulate_bounds,
    update_effect,
)
from causalbounds.bounds import SymbolicBoundPair, latex_case_strings

import golden
import oracles
from conftest import IV_TEXT, MEDIATION_VALUES, MENDELIAN_VALUES, MENDELIAN_TEXT, RISKDIFF


def test_iv_bounds_match_published_sets(iv_bounds):
    assert set(iv_bounds.lower) == set(golden.IV_LOWER)
    assert set(iv_bounds.upper) == set(golden.IV_UPPER)
    assert len(iv_bounds.lower) == 8 and len(iv_bounds.upper) == 8


def test_iv_first_lower_expression(iv_bounds):
    assert render_expression(iv_bounds.lower[0]) == "p00_0 - p00_1 - p10_1 - p01_1"


def test_point_identification():
    problem = analyze_graph(IV_TEXT, None, "p{X(Z = 0) = 1}")
    bounds = optimize_effect(problem)
    assert len(bounds.lower) == 1 and len(bounds.upper) == 1
    rng = np.random.default_rng(3)
    for _ in range(20):
        values = oracles.random_feasible_values(problem, rng)
        ev = evaluate_bounds(bounds, values)
        expected = values["p10_0"] + values["p11_0"]
        assert ev.lower == pytest.approx(expected, abs=1e-12)
        assert ev.upper == pytest.approx(expected, abs=1e-12)


def test_monotone_tightens_pointwise(iv_bounds, iv_monotone_problem, iv_monotone_bounds):
    rng = np.random.default_rng(11)
    for _ in range(100):
        values = oracles.random_feasible_values(iv_monotone_problem, rng)
        base = evaluate_bounds(iv_bounds, values)
        mono = evaluate_bounds(iv_monotone_bounds, values)
        assert mono.lower >= base.lower - 1e-12
        assert mono.upper <= base.upper + 1e-12


def test_constraint_text_equals_monotone_edge(iv_problem, iv_monotone_bounds):
    via_text = analyze_graph(IV_TEXT, "X(Z = 1) >= X(Z = 0)", RISKDIFF)
    bounds = optimize_effect(via_text)
    assert set(bounds.lower) == set(iv_monotone_bounds.lower)
    assert set(bounds.upper) == set(iv_monotone_bounds.upper)


def test_evaluate_uniform_q(iv_bounds):
    values = {p.name: Fraction(1, 4) for p in iv_bounds.parameters}
    lower, upper = evaluate_bounds_exact(iv_bounds, values)
    assert lower == Fraction(-1, 2)
    assert upper == Fraction(1, 2)


def test_evaluate_degenerate_corner(iv_bounds):
    values = {p.name: 0.0 for p in iv_bounds.parameters}
    values["p00_0"] = 1.0
    values["p00_1"] = 1.0
    ev = evaluate_bounds(iv_bounds, values)
    assert ev.lower == pytest.approx(0.0)
    assert ev.upper == pytest.approx(1.0)


def test_evaluate_mendelian():
    problem = analyze_graph(MENDELIAN_TEXT, None, RISKDIFF)
    bounds = optimize_effect(problem)
    ev = evaluate_bounds(bounds, MENDELIAN_VALUES)
    assert round(ev.lower, 2) == golden.MENDELIAN_BOUNDS[0]
    assert round(ev.upper, 2) == golden.MENDELIAN_BOUNDS[1]
    assert not ev.warnings


def test_evaluate_missing_parameter(iv_bounds):
    with pytest.raises(EvaluationError, match="missing value"):
        evaluate_bounds(iv_bounds, {"p00_0": 0.5})


def test_evaluate_out_of_range(iv_bounds):
    values = {p.name: 0.125 for p in iv_bounds.parameters}
    values["p00_0"] = 1.5
    with pytest.raises(EvaluationError, match="outside"):
        evaluate_bounds(iv_bounds, values)


def test_evaluate_sum_warning(iv_bounds):
    values = {p.name: 0.3 for p in iv_bounds.parameters}
    ev = evaluate_bounds(iv_bounds, values)
    assert ev.warnings and "sum" in ev.warnings[0]


def test_evaluate_monotone_under_list_extension(iv_bounds):
    """Dropping an expression can only loosen the bound."""
    rng = np.random.default_rng(17)
    values = {p.name: v for p, v in zip(iv_bounds.parameters, [0.25] * 8)}
    full = evaluate_bounds(iv_bounds, values)
    trimmed = SymbolicBoundPair(
        lower=iv_bounds.lower[:3], upper=iv_bounds.upper[:3], parameters=iv_bounds.parameters)
    part = evaluate_bounds(trimmed, values)
    assert part.lower <= full.lower
    assert part.upper >= full.upper


def test_canonicalize_merges_and_drops():
    e = LinearExpression(
        constant=Fraction(0),
        coefficients=(("p00_0", Fraction(1)), ("p00_0", Fraction(1)), ("p00_0", Fraction(-1))),
    )
    c = canonicalize_expression(e)
    assert c.coefficients == (("p00_0", Fraction(1)),)


def test_canonicalize_any_input_order():
    a = make_expression(1, {"p01_1": -1, "p10_0": -1})
    b = make_expression(1, [("p10_0", -1), ("p01_1", -1)])
    assert a == b
    assert render_expression(a) == "1 - p10_0 - p01_1"


def test_canonicalize_empty_is_zero():
    e = make_expression(0, {})
    assert render_expression(e) == "0"
    assert canonicalize_expression(e) == e


def test_render_bounds_text_layout(iv_bounds):
    text = render_bounds_text(iv_bounds)
    assert text.startswith("lower bound =  \nMAX {")
    assert "upper bound =  \nMIN {" in text
    assert "p00_0 - p00_1 - p10_1 - p01_1" in text
    assert "2p10_1" in text  # integer coefficients render without a gap


def test_latex_first_case(iv_bounds):
    cases = latex_case_strings(iv_bounds, "lower")
    assert cases[0] == golden.IV_LATEX_LOWER_CASE_1


def test_latex_wraps_and_substitutes(iv_bounds):
    text = latex_bounds(iv_bounds)
    assert "\\begin{cases}" in text
    assert "P(X = 0, Y = 0 | Z = 0)" in text
    assert "p00_0" not in text


def test_latex_parameter_bijection(iv_bounds):
    """Each parameter appears in the LaTeX exactly as often as in the
    symbolic rendering."""
    latex = latex_bounds(iv_bounds)
    for p in iv_bounds.parameters:
        symbolic_count = sum(
            1 for e in iv_bounds.lower + iv_bounds.upper if e.coefficient(p.name) != 0)
        assert latex.count(p.interpretation) == symbolic_count


def test_latex_single_expression_no_wrapper():
    problem = analyze_graph(IV_TEXT, None, "p{X(Z = 0) = 1}")
    bounds = optimize_effect(problem)
    text = latex_bounds(bounds)
    assert "cases" not in text
    assert "max" not in text


def test_mediation_numeric_table():
    base = analyze_graph(
        "node X side=left\nnode Y\nnode M\nedge X -> Y\nedge X -> M\nedge M -> Y\n",
        None,
        "p{Y(M = 0, X = 1) = 1} - p{Y(M = 0, X = 0) = 1}",
    )
    queries = {
        "CDE(0)": None,
        "CDE(1)": "p{Y(M = 1, X = 1) = 1} - p{Y(M = 1, X = 0) = 1}",
        "NDE(0)": "p{Y(M(X = 0), X = 1) = 1} - p{Y(M(X = 0), X = 0) = 1}",
        "NDE(1)": "p{Y(M(X = 1), X = 1) = 1} - p{Y(M(X = 1), X = 0) = 1}",
    }
    for name, q in queries.items():
        problem = base if q is None else update_effect(base, q)
        ev = evaluate_bounds(optimize_effect(problem), MEDIATION_VALUES)
        expected = golden.MEDIATION_TABLE[name]
        assert ev.lower == pytest.approx(expected[0], abs=0.005)
        assert ev.upper == pytest.approx(expected[1], abs=0.005)


def test_simulate_soundness_small(iv_problem, iv_bounds):
    report = simulate_bounds(iv_problem, iv_bounds, n=50, seed=42)
    assert report.violations == 0
    assert report.n == 50


def test_simulate_deterministic(iv_problem, iv_bounds):
    a = simulate_bounds(iv_problem, iv_bounds, n=5, seed=9)
    b = simulate_bounds(iv_problem, iv_bounds, n=5, seed=9)
    assert a == b
    c = simulate_bounds(iv_problem, iv_bounds, n=5, seed=10)
    assert a != c


def test_simulate_point_identified_width_zero():
    problem = analyze_graph(IV_TEXT, None, "p{X(Z = 0) = 1}")
    bounds = optimize_effect(problem)
    report = simulate_bounds(problem, bounds, n=25, seed=1)
    assert report.violations == 0
    assert all(d.width == 0 for d in report.draws)


def test_simulate_rejects_zero_draws(iv_problem, iv_bounds):
    with pytest.raises(ValueError):
        simulate_bounds(iv_problem, iv_bounds, n=0, seed=1)


def test_bounds_payload_deterministic(iv_bounds):
    payload = bounds_payload(iv_bounds)
    assert payload["lower"][0] == {
        "constant": "0",
        "coefficients": {"p00_0": "1", "p00_1": "-1", "p10_1": "-1", "p01_1": "-1"},
    }
    assert "timings" not in payload
    assert [p["name"] for p in payload["parameters"]][:2] == ["p00_0", "p00_1"]


def test_constant_query_short_circuit(iv_problem):
    problem = update_effect(iv_problem, "p{Y(X = 1) = 1} + p{Y(X = 1) = 0}")
    bounds = optimize_effect(problem)
    assert bounds.lower == bounds.upper == (make_expression(1, {}),)


def test_oracle_tightness_quick(iv_problem, iv_bounds):
    rng = np.random.default_rng(29)
    for _ in range(10):
        values = oracles.random_feasible_values(iv_problem, rng)
        lo, hi = oracles.lp_bounds(iv_problem, values)
        ev = evaluate_bounds(iv_bounds, values)
        assert ev.lower == pytest.approx(lo, abs=1e-9)
        assert ev.upper == pytest.approx(hi, abs=1e-9)
