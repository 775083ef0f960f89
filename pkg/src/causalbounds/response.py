"""Response functions: enumeration, recursive evaluation, admissibility filtering.

Each observed variable W with observed parents p1..pk (canonical order) has
``card(W) ** prod(card(pi))`` response functions.  Index n encodes the output
digits of the function over parent assignments enumerated lexicographically
(itertools.product order), least-significant digit first, base card(W).  A
parentless variable has card(W) constant functions, so its index is its value.

This index scheme is part of the reproducibility contract: parameter order,
q-variable names, and hence the printed bounds all derive from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .errors import InfeasibleConstraintsError, UnsupportedConstraintError
from .graph import LEFT, RIGHT, CausalGraph, ensure_augmented
from .query import ConstraintStatement, CounterfactualTerm, EffectQuery, EffectTerm, InterventionAssignment, OutcomeEvent


@dataclass(frozen=True)
class ResponseFunctions:
    """All response functions of one observed variable."""

    name: str
    cardinality: int
    parents: tuple[str, ...]
    parent_cards: tuple[int, ...]
    count: int

    def assignment_position(self, parent_values: tuple[int, ...]) -> int:
        pos = 0
        for value, card in zip(parent_values, self.parent_cards):
            pos = pos * card + value
        return pos

    def value(self, index: int, parent_values: tuple[int, ...]) -> int:
        """Output of response function ``index`` at the given parent values."""
        if not 0 <= index < self.count:
            raise ValueError(f"response index {index} out of range for {self.name}")
        pos = self.assignment_position(parent_values)
        return (index // self.cardinality**pos) % self.cardinality

    def assignments(self) -> Iterable[tuple[int, ...]]:
        """Parent assignments in lexicographic order (matches digit positions)."""
        return product(*(range(c) for c in self.parent_cards))


@dataclass(frozen=True)
class ResponseFunctionTable:
    """Response-function index schemes for every observed variable of a graph."""

    entries: tuple[ResponseFunctions, ...]

    def __getitem__(self, name: str) -> ResponseFunctions:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries)


def create_response_function_table(g: CausalGraph) -> ResponseFunctionTable:
    """Build the table for every observed variable of an augmented graph.

    Latent variables get no response functions; latent parents are absorbed
    into the response-function randomness.
    """
    g = ensure_augmented(g)
    entries = []
    for v in g.observed:
        parents = g.observed_parents(v.name)
        cards = tuple(g.variable(p).cardinality for p in parents)
        total = 1
        for c in cards:
            total *= c
        entries.append(ResponseFunctions(
            name=v.name,
            cardinality=v.cardinality,
            parents=parents,
            parent_cards=cards,
            count=v.cardinality**total,
        ))
    return ResponseFunctionTable(entries=tuple(entries))


# ---------------------------------------------------------------------------
# Recursive evaluation


def _resolve(table: ResponseFunctionTable, rvec: Mapping[str, int], pins: Mapping[str, int],
             var: str, ctx: Mapping[str, InterventionAssignment]) -> int:
    """Value of ``var`` under response vector ``rvec``, pinned left values
    ``pins``, and the active intervention context ``ctx``.

    The recursion walks from the outcome toward its ancestors; the first time
    it reaches an intervened variable the assigned value is substituted, with
    nested settings like M(X = 0) resolved under their own fresh context.
    Variables on no intervened path take their natural values, so omitted
    mediators propagate intervention effects.
    """
    if var in ctx:
        a = ctx[var]
        if a.value is not None:
            return a.value
        nested_ctx = {n.variable: n for n in a.nested}
        return _resolve(table, rvec, pins, var, nested_ctx)
    if var in pins:
        return pins[var]
    fns = table[var]
    parent_values = tuple(_resolve(table, rvec, pins, p, ctx) for p in fns.parents)
    return fns.value(rvec[var], parent_values)


def eval_response(table: ResponseFunctionTable, rvec: Mapping[str, int], var: str) -> int:
    """Natural (intervention-free) value of ``var`` determined by ``rvec``."""
    return _resolve(table, rvec, {}, var, {})


def eval_response_under_intervention(
    table: ResponseFunctionTable,
    rvec: Mapping[str, int],
    var: str,
    interventions: tuple[InterventionAssignment, ...],
    pins: Mapping[str, int] | None = None,
) -> int:
    """Value of ``var`` under the interventions of one outcome event.

    ``rvec`` may omit left-side variables when their observed values are
    supplied through ``pins`` instead.
    """
    ctx = {a.variable: a for a in interventions}
    return _resolve(table, rvec, pins or {}, var, ctx)


def event_holds(table: ResponseFunctionTable, rvec: Mapping[str, int], event: OutcomeEvent,
                pins: Mapping[str, int] | None = None) -> bool:
    return eval_response_under_intervention(table, rvec, event.variable, event.interventions, pins) == event.value


def term_holds(table: ResponseFunctionTable, rvec: Mapping[str, int], term: EffectTerm,
               pins: Mapping[str, int] | None = None) -> bool:
    return all(event_holds(table, rvec, e, pins) for e in term.events)


# ---------------------------------------------------------------------------
# Joint response-vector enumeration


def right_variable_names(g: CausalGraph) -> tuple[str, ...]:
    return tuple(v.name for v in g.right_observed)


def left_variable_names(g: CausalGraph) -> tuple[str, ...]:
    return tuple(v.name for v in g.left_observed)


def enumerate_combos(names: tuple[str, ...], index_sets: Mapping[str, tuple[int, ...]]) -> list[dict[str, int]]:
    """All joint response vectors over ``names`` in lexicographic order."""
    combos = []
    for values in product(*(index_sets[n] for n in names)):
        combos.append(dict(zip(names, values)))
    return combos


def full_index_sets(table: ResponseFunctionTable) -> dict[str, tuple[int, ...]]:
    return {e.name: tuple(range(e.count)) for e in table.entries}


# ---------------------------------------------------------------------------
# Admissibility: monotone edges and almost-sure counterfactual constraints


def _constant_assignments(term: CounterfactualTerm, fns: ResponseFunctions) -> dict[str, int]:
    """Map parent name -> pinned value for one side of a constraint.

    Only constant settings of direct observed parents are supported; anything
    else cannot be decided per response index in isolation.
    """
    pinned: dict[str, int] = {}
    for a in term.interventions:
        if a.nested is not None:
            raise UnsupportedConstraintError(
                f"nested setting {a.variable}(...) in a constraint is not per-index decidable")
        if a.variable not in fns.parents:
            raise UnsupportedConstraintError(
                f"constraint intervenes on {a.variable}, which is not a direct observed parent of {fns.name}")
        pinned[a.variable] = a.value
    return pinned


def _constraint_admits(c: ConstraintStatement, fns: ResponseFunctions, index: int) -> bool:
    lhs_pins = _constant_assignments(c.lhs, fns)
    if isinstance(c.rhs, int):
        rhs_pins = None
        rhs_const = c.rhs
    else:
        if c.rhs.variable != c.lhs.variable:
            raise UnsupportedConstraintError(
                f"constraint relates {c.lhs.variable} to {c.rhs.variable}; both sides must "
                "reference the same variable (or a constant)")
        rhs_pins = _constant_assignments(c.rhs, fns)
        rhs_const = None

    for assignment in fns.assignments():
        base = dict(zip(fns.parents, assignment))
        lhs_vals = tuple((base | lhs_pins)[p] for p in fns.parents)
        lhs_val = fns.value(index, lhs_vals)
        if rhs_pins is None:
            rhs_val = rhs_const
        else:
            rhs_vals = tuple((base | rhs_pins)[p] for p in fns.parents)
            rhs_val = fns.value(index, rhs_vals)
        if c.relation == "=" and lhs_val != rhs_val:
            return False
        if c.relation == "<=" and not lhs_val <= rhs_val:
            return False
        if c.relation == ">=" and not lhs_val >= rhs_val:
            return False
    return True


def _monotone_admits(fns: ResponseFunctions, parent: str, index: int) -> bool:
    """Non-decreasing in ``parent``: f(a) <= f(a') whenever only the parent's
    coordinate increases."""
    axis = fns.parents.index(parent)
    for assignment in fns.assignments():
        if assignment[axis] + 1 >= fns.parent_cards[axis]:
            continue
        bumped = list(assignment)
        bumped[axis] += 1
        if fns.value(index, assignment) > fns.value(index, tuple(bumped)):
            return False
    return True


def admissible_response_indices(
    table: ResponseFunctionTable,
    g: CausalGraph,
    constraints: list[ConstraintStatement] | None = None,
) -> dict[str, tuple[int, ...]]:
    """Per-variable index sets surviving every monotone edge and constraint."""
    admissible = full_index_sets(table)
    for e in g.edges:
        if not e.monotone:
            continue
        fns = table[e.dst]
        if e.src not in fns.parents:
            raise UnsupportedConstraintError(
                f"monotone edge {e.src} -> {e.dst} must join observed variables")
        admissible[e.dst] = tuple(i for i in admissible[e.dst] if _monotone_admits(fns, e.src, i))
    for c in constraints or ():
        if not any(entry.name == c.lhs.variable for entry in table.entries):
            raise UnsupportedConstraintError(f"constraint references latent variable {c.lhs.variable}")
        fns = table[c.lhs.variable]
        admissible[c.lhs.variable] = tuple(
            i for i in admissible[c.lhs.variable] if _constraint_admits(c, fns, i))
    empty = [name for name, idx in admissible.items() if not idx]
    if empty:
        raise InfeasibleConstraintsError(
            f"assumptions are jointly infeasible: no admissible response function for {', '.join(empty)}")
    return admissible


# ---------------------------------------------------------------------------
# Left-side dependence of query terms


def term_indicator(
    table: ResponseFunctionTable,
    g: CausalGraph,
    term: EffectTerm,
    right_combo: Mapping[str, int],
    left_combos: list[dict[str, int]],
) -> bool | None:
    """Truth value of a term at one right-side response vector, or None when
    it varies across left-side response vectors (a left-dependent term)."""
    result: bool | None = None
    if not left_combos:
        return term_holds(table, right_combo, term)
    for left in left_combos:
        value = term_holds(table, {**right_combo, **left}, term)
        if result is None:
            result = value
        elif result != value:
            return None
    return result


def effect_left_dependence(
    table: ResponseFunctionTable,
    g: CausalGraph,
    q: EffectQuery,
    admissible: Mapping[str, tuple[int, ...]] | None = None,
) -> list[int]:
    """Indices of query terms whose truth varies with the left side."""
    index_sets = dict(admissible) if admissible else full_index_sets(table)
    rights = enumerate_combos(right_variable_names(g), index_sets)
    lefts = enumerate_combos(left_variable_names(g), index_sets)
    dependent = []
    for t, term in enumerate(q.terms):
        for combo in rights:
            if term_indicator(table, g, term, combo, lefts) is None:
                dependent.append(t)
                break
    return dependent
