"""Assembly of the exact-rational linear program.

The unknowns q are the joint probabilities of the right-side response-function
vector.  The observable parameters p are conditional probabilities of the
right-side observed values given the left-side values.  Conditioning pins the
left side, so each parameter row of the constraint matrix marks exactly the
response vectors that reproduce its right-side values under its left-side
assignment, giving R q = (1, p) with R in {0,1}.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

from .errors import ValidationFailure
from .graph import CausalGraph, ValidationReport, Violation, ensure_augmented, validate_graph
from .query import ConstraintStatement, EffectQuery, format_constraint, format_effect, parse_constraints, parse_effect, validate_effect
from .response import (
    ResponseFunctionTable,
    admissible_response_indices,
    create_response_function_table,
    enumerate_combos,
    eval_response_under_intervention,
    left_variable_names,
    right_variable_names,
    term_indicator,
)


def value_label(values: tuple[int, ...], cards: tuple[int, ...]) -> str:
    """Concatenated value digits; '.'-separated when any cardinality exceeds 10."""
    if any(c > 10 for c in cards):
        return ".".join(str(v) for v in values)
    return "".join(str(v) for v in values)


def colex_assignments(cards: tuple[int, ...]):
    """Value tuples with the first coordinate varying fastest.

    This is the enumeration behind parameter order and naming, e.g. binary
    (X, Y) yields 00, 10, 01, 11.
    """
    for t in product(*(range(c) for c in reversed(cards))):
        yield tuple(reversed(t))


@dataclass(frozen=True)
class Parameter:
    """One observable conditional probability P(right values | left values)."""

    name: str
    right_names: tuple[str, ...]
    right_values: tuple[int, ...]
    left_names: tuple[str, ...]
    left_values: tuple[int, ...]

    @property
    def interpretation(self) -> str:
        right = ", ".join(f"{n} = {v}" for n, v in zip(self.right_names, self.right_values))
        if not self.left_names:
            return f"P({right})"
        left = ", ".join(f"{n} = {v}" for n, v in zip(self.left_names, self.left_values))
        return f"P({right} | {left})"


def enumerate_parameters(g: CausalGraph) -> tuple[Parameter, ...]:
    """All parameters, ordered by right-side configuration then left-side."""
    g = ensure_augmented(g)
    right = right_variable_names(g)
    left = left_variable_names(g)
    right_cards = tuple(g.variable(n).cardinality for n in right)
    left_cards = tuple(g.variable(n).cardinality for n in left)
    params = []
    for rvals in colex_assignments(right_cards):
        for lvals in colex_assignments(left_cards):
            name = "p" + value_label(rvals, right_cards)
            if left:
                name += "_" + value_label(lvals, left_cards)
            params.append(Parameter(
                name=name, right_names=right, right_values=rvals,
                left_names=left, left_values=lvals))
    return tuple(params)


def q_name(right_names: tuple[str, ...], combo: dict[str, int]) -> str:
    return "q" + "_".join(str(combo[n]) for n in right_names)


@dataclass(frozen=True)
class LinearCausalProblem:
    """Everything needed to bound one causal query on one graph."""

    graph: CausalGraph
    table: ResponseFunctionTable
    admissible: tuple[tuple[str, tuple[int, ...]], ...]
    q_names: tuple[str, ...]
    right_combos: tuple[tuple[int, ...], ...]
    parameters: tuple[Parameter, ...]
    matrix: tuple[tuple[int, ...], ...]
    kept_rows: tuple[int, ...]
    constraint_strings: tuple[str, ...]
    user_constraints: tuple[ConstraintStatement, ...]
    objective: tuple[Fraction, ...]
    effect: EffectQuery
    effect_text: str
    term_q_names: tuple[tuple[str, ...], ...]
    left_configs: tuple[tuple[int, ...], ...]
    logs: tuple[str, ...]

    @property
    def admissible_sets(self) -> dict[str, tuple[int, ...]]:
        return dict(self.admissible)

    def row_label(self, row: int) -> str:
        return "1" if row == 0 else self.parameters[row - 1].name


def _right_value_map(g: CausalGraph, table: ResponseFunctionTable,
                     combos: list[dict[str, int]], left_configs: list[tuple[int, ...]]):
    """values[(combo index, left index)] -> right-side value tuple."""
    right = right_variable_names(g)
    left = left_variable_names(g)
    values = {}
    for ci, combo in enumerate(combos):
        for li, lconf in enumerate(left_configs):
            pins = dict(zip(left, lconf))
            values[(ci, li)] = tuple(
                eval_response_under_intervention(table, combo, v, (), pins) for v in right)
    return values


def create_constraint_matrix(
    g: CausalGraph,
    table: ResponseFunctionTable,
    admissible: dict[str, tuple[int, ...]],
) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    """The matrix R = (1; P) with R q = (1, p), plus readable row equations."""
    g = ensure_augmented(g)
    right = right_variable_names(g)
    left = left_variable_names(g)
    left_cards = tuple(g.variable(n).cardinality for n in left)
    combos = enumerate_combos(right, admissible)
    left_configs = list(colex_assignments(left_cards))
    params = enumerate_parameters(g)
    values = _right_value_map(g, table, combos, left_configs)
    left_pos = {cfg: i for i, cfg in enumerate(left_configs)}

    names = [q_name(right, c) for c in combos]
    rows: list[tuple[int, ...]] = [tuple(1 for _ in combos)]
    strings = ["1 = " + " + ".join(names)]
    for p in params:
        li = left_pos[p.left_values]
        row = tuple(1 if values[(ci, li)] == p.right_values else 0 for ci in range(len(combos)))
        rows.append(row)
        hits = [names[ci] for ci in range(len(combos)) if row[ci]]
        strings.append(f"{p.name} = " + (" + ".join(hits) if hits else "0"))
    return tuple(rows), tuple(strings)


def independent_rows(matrix: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Greedy maximal linearly independent row subset, exact over rationals,
    scanning rows in order (the all-ones normalization row survives first)."""
    kept: list[int] = []
    basis: list[tuple[int, list[Fraction]]] = []
    for i, row in enumerate(matrix):
        v = [Fraction(x) for x in row]
        for piv, vec in basis:
            if v[piv]:
                f = v[piv] / vec[piv]
                v = [a - f * b for a, b in zip(v, vec)]
        pivot = next((j for j, a in enumerate(v) if a), None)
        if pivot is not None:
            kept.append(i)
            basis.append((pivot, v))
    return tuple(kept)


def create_effect_vector(
    g: CausalGraph,
    table: ResponseFunctionTable,
    effect: EffectQuery,
    admissible: dict[str, tuple[int, ...]],
) -> tuple[tuple[Fraction, ...], tuple[tuple[str, ...], ...]]:
    """Objective coefficients over admissible response vectors, plus the
    q-variable names satisfying each query term."""
    g = ensure_augmented(g)
    right = right_variable_names(g)
    combos = enumerate_combos(right, admissible)
    lefts = enumerate_combos(left_variable_names(g), admissible)
    names = [q_name(right, c) for c in combos]

    coeffs = [Fraction(0)] * len(combos)
    term_lists: list[tuple[str, ...]] = []
    for ti, term in enumerate(effect.terms):
        hits = []
        for ci, combo in enumerate(combos):
            ind = term_indicator(table, g, term, combo, lefts)
            if ind is None:
                raise ValidationFailure(ValidationReport((Violation(
                    "LEFT_DEPENDENT_QUERY",
                    f"term {ti + 1} takes different values across left-side configurations",
                    format_effect(EffectQuery(terms=(term,)))),)))
            if ind:
                coeffs[ci] += term.coefficient
                hits.append(names[ci])
        term_lists.append(tuple(hits))
    return tuple(coeffs), tuple(term_lists)


def analyze_graph(
    graph: CausalGraph | str,
    constraints: list[ConstraintStatement] | str | None = None,
    effect: EffectQuery | str = "",
) -> LinearCausalProblem:
    """Translate graph, constraints, and causal query into the linear program."""
    g = parse_graph_from(graph)
    report = validate_graph(g)
    if not report.ok:
        raise ValidationFailure(report)
    g = ensure_augmented(g)

    if isinstance(effect, str):
        effect = parse_effect(effect, g)
    effect_report = validate_effect(effect, g)
    if not effect_report.ok:
        raise ValidationFailure(effect_report)

    if isinstance(constraints, str):
        constraints = parse_constraints(constraints, g)
    constraints = list(constraints or [])

    table = create_response_function_table(g)
    admissible = admissible_response_indices(table, g, constraints)
    matrix, strings = create_constraint_matrix(g, table, admissible)
    kept = independent_rows(matrix)
    objective, term_lists = create_effect_vector(g, table, effect, admissible)

    right = right_variable_names(g)
    left = left_variable_names(g)
    left_cards = tuple(g.variable(n).cardinality for n in left)
    combos = enumerate_combos(right, admissible)
    params = enumerate_parameters(g)

    total = 1
    for e in table.entries:
        if e.name in right:
            total *= e.count
    logs = (
        f"observed variables: {len(g.observed)} ({len(left)} left, {len(right)} right)",
        f"joint right-side response vectors: {total} total, {len(combos)} admissible",
        f"parameters: {len(params)}; constraint rows: {len(matrix)}; independent rows: {len(kept)}",
        f"effect: {format_effect(effect)}",
    ) + tuple(f"constraint: {format_constraint(c)}" for c in constraints)

    return LinearCausalProblem(
        graph=g,
        table=table,
        admissible=tuple(sorted(admissible.items())),
        q_names=tuple(q_name(right, c) for c in combos),
        right_combos=tuple(tuple(c[n] for n in right) for c in combos),
        parameters=params,
        matrix=matrix,
        kept_rows=kept,
        constraint_strings=strings,
        user_constraints=tuple(constraints),
        objective=objective,
        effect=effect,
        effect_text=format_effect(effect),
        term_q_names=term_lists,
        left_configs=tuple(colex_assignments(left_cards)),
        logs=logs,
    )


def parse_graph_from(graph: CausalGraph | str) -> CausalGraph:
    if isinstance(graph, str):
        from .graph import parse_graph_spec

        return parse_graph_spec(graph)
    return graph


def update_effect(problem: LinearCausalProblem, effect: EffectQuery | str) -> LinearCausalProblem:
    """Reuse the constraint space of an analyzed problem for a new query."""
    g = problem.graph
    if isinstance(effect, str):
        effect = parse_effect(effect, g)
    effect_report = validate_effect(effect, g)
    if not effect_report.ok:
        raise ValidationFailure(effect_report)
    objective, term_lists = create_effect_vector(g, problem.table, effect, problem.admissible_sets)
    logs = tuple(
        f"effect: {format_effect(effect)}" if line.startswith("effect: ") else line
        for line in problem.logs
    )
    return replace(
        problem,
        objective=objective,
        effect=effect,
        effect_text=format_effect(effect),
        term_q_names=term_lists,
        logs=logs,
    )


def problem_payload(problem: LinearCausalProblem) -> dict:
    """JSON-ready description of the assembled linear program."""
    def frac(x: Fraction) -> str:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    return {
        "effect": problem.effect_text,
        "q_names": list(problem.q_names),
        "right_response_vectors": [list(c) for c in problem.right_combos],
        "parameters": [
            {"name": p.name, "interpretation": p.interpretation} for p in problem.parameters
        ],
        "matrix": [list(row) for row in problem.matrix],
        "rhs": ["1"] + [p.name for p in problem.parameters],
        "kept_rows": list(problem.kept_rows),
        "constraints": list(problem.constraint_strings),
        "user_constraints": [format_constraint(c) for c in problem.user_constraints],
        "objective": [frac(x) for x in problem.objective],
        "admissible": {name: list(idx) for name, idx in problem.admissible},
        "left_configurations": [list(c) for c in problem.left_configs],
        "logs": list(problem.logs),
    }
