"""Counterfactual query and constraint language.

Surface syntax (whitespace-insensitive)::

    query      := term (("+" | "-") term)*
    term       := ["-"] [rational] "p{" event ("," event)* "}"
    event      := VAR ["(" assignments ")"] "=" INT
    assignments:= assignment ("," assignment)*
    assignment := VAR "=" INT | VAR "(" assignments ")"
    constraint := VAR ["(" assignments ")"] ("=" | "<=" | ">=") (constraint-term | INT)

``Y(M(X = 0), X = 1) = 1`` asserts the outcome Y takes value 1 when X is set
to 1 while M is set to whatever value it would attain under X set to 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputSyntaxError
from .graph import LEFT, CausalGraph, ValidationReport, Violation


@dataclass(frozen=True)
class InterventionAssignment:
    """Setting of one intervention target: either a constant value or the
    value the target attains under its own nested interventions."""

    variable: str
    value: int | None = None
    nested: tuple["InterventionAssignment", ...] | None = None

    def __post_init__(self):
        if (self.value is None) == (self.nested is None):
            raise ValueError("exactly one of value/nested must be set")


@dataclass(frozen=True)
class OutcomeEvent:
    """Assertion that ``variable`` equals ``value`` under ``interventions``."""

    variable: str
    value: int
    interventions: tuple[InterventionAssignment, ...] = ()


@dataclass(frozen=True)
class EffectTerm:
    coefficient: Fraction
    events: tuple[OutcomeEvent, ...]


@dataclass(frozen=True)
class EffectQuery:
    terms: tuple[EffectTerm, ...]


@dataclass(frozen=True)
class CounterfactualTerm:
    """An outcome-event shape without an asserted value, e.g. ``X(Z = 1)``."""

    variable: str
    interventions: tuple[InterventionAssignment, ...] = ()


@dataclass(frozen=True)
class ConstraintStatement:
    lhs: CounterfactualTerm
    relation: str  # "=", "<=", ">="
    rhs: CounterfactualTerm | int


# ---------------------------------------------------------------------------
# Scanner

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op><=|>=|==|[{}(),=+\-/≤≥]))")


class _Scanner:
    def __init__(self, text: str, line: int = 1):
        self.text = text
        self.line = line
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        while self.pos < len(text):
            m = _TOKEN_RE.match(text, self.pos)
            if m is None or m.end() == self.pos and not text[self.pos:].strip():
                break
            if m.lastgroup is None:
                break
            col = m.start(m.lastgroup) + 1
            self.tokens.append((m.lastgroup, m.group(m.lastgroup), col))
            self.pos = m.end()
        if text[self.pos:].strip():
            raise InputSyntaxError(f"unexpected character {text[self.pos:].strip()[0]!r}", line, self.pos + 1)
        self.idx = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise InputSyntaxError("unexpected end of input", self.line, len(self.text) + 1)
        self.idx += 1
        return tok

    def expect(self, value: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[1] != value:
            raise InputSyntaxError(f"expected {value!r}, got {tok[1]!r}", self.line, tok[2])
        return tok

    def at_end(self) -> bool:
        return self.idx >= len(self.tokens)


# ---------------------------------------------------------------------------
# Parsing helpers shared by queries and constraints


def _check_variable(g: CausalGraph, name: str, line: int, col: int, *, intervened: bool) -> None:
    if not g.has_variable(name):
        raise InputSyntaxError(f"unknown variable {name!r}", line, col)
    if intervened and g.variable(name).latent:
        raise InputSyntaxError(f"cannot intervene on latent variable {name!r}", line, col)


def _check_value(g: CausalGraph, name: str, value: int, line: int, col: int) -> None:
    var = g.variable(name)
    if var.latent:
        return
    if not 0 <= value < var.cardinality:
        raise InputSyntaxError(
            f"value {value} out of range for {name} (levels 0..{var.cardinality - 1})", line, col)


def _parse_assignments(sc: _Scanner, g: CausalGraph) -> tuple[InterventionAssignment, ...]:
    out: list[InterventionAssignment] = []
    seen: set[str] = set()
    while True:
        kind, name, col = sc.next()
        if kind != "name":
            raise InputSyntaxError(f"expected a variable name, got {name!r}", sc.line, col)
        _check_variable(g, name, sc.line, col, intervened=True)
        if name in seen:
            raise InputSyntaxError(f"duplicate intervention target {name!r}", sc.line, col)
        seen.add(name)
        nxt = sc.next()
        if nxt[1] == "=":
            kind, val, vcol = sc.next()
            if kind != "int":
                raise InputSyntaxError(f"expected an integer value, got {val!r}", sc.line, vcol)
            _check_value(g, name, int(val), sc.line, vcol)
            out.append(InterventionAssignment(variable=name, value=int(val)))
        elif nxt[1] == "(":
            nested = _parse_assignments(sc, g)
            sc.expect(")")
            out.append(InterventionAssignment(variable=name, nested=nested))
        else:
            raise InputSyntaxError(f"expected '=' or '(', got {nxt[1]!r}", sc.line, nxt[2])
        tok = sc.peek()
        if tok is not None and tok[1] == ",":
            sc.next()
            continue
        return tuple(out)


def _parse_event(sc: _Scanner, g: CausalGraph) -> OutcomeEvent:
    kind, name, col = sc.next()
    if kind != "name":
        raise InputSyntaxError(f"expected a variable name, got {name!r}", sc.line, col)
    _check_variable(g, name, sc.line, col, intervened=False)
    interventions: tuple[InterventionAssignment, ...] = ()
    tok = sc.peek()
    if tok is not None and tok[1] == "(":
        sc.next()
        interventions = _parse_assignments(sc, g)
        sc.expect(")")
    sc.expect("=")
    kind, val, vcol = sc.next()
    if kind != "int":
        raise InputSyntaxError(f"expected an integer value, got {val!r}", sc.line, vcol)
    _check_value(g, name, int(val), sc.line, vcol)
    return OutcomeEvent(variable=name, value=int(val), interventions=interventions)


def _parse_coefficient(sc: _Scanner) -> Fraction:
    """Optional rational coefficient before 'p{'; 1 when absent."""
    tok = sc.peek()
    if tok is None or tok[0] != "int":
        return Fraction(1)
    sc.next()
    num = int(tok[1])
    nxt = sc.peek()
    if nxt is not None and nxt[1] == "/":
        sc.next()
        kind, den, dcol = sc.next()
        if kind != "int" or int(den) == 0:
            raise InputSyntaxError("expected a nonzero integer denominator", sc.line, dcol)
        return Fraction(num, int(den))
    return Fraction(num)


def parse_effect(text: str, g: CausalGraph) -> EffectQuery:
    """Parse a causal query string against a validated graph."""
    sc = _Scanner(text)
    if sc.at_end():
        raise InputSyntaxError("empty query", sc.line, 1)
    terms: list[EffectTerm] = []
    sign = Fraction(1)
    first = True
    while True:
        tok = sc.peek()
        if first and tok is not None and tok[1] == "-":
            sc.next()
            sign = Fraction(-1)
        coeff = sign * _parse_coefficient(sc)
        ptok = sc.next()
        if ptok[1] != "p":
            raise InputSyntaxError(f"expected 'p{{', got {ptok[1]!r}", sc.line, ptok[2])
        sc.expect("{")
        events = [_parse_event(sc, g)]
        while sc.peek() is not None and sc.peek()[1] == ",":
            sc.next()
            events.append(_parse_event(sc, g))
        sc.expect("}")
        if coeff != 0:
            terms.append(EffectTerm(coefficient=coeff, events=tuple(events)))
        if sc.at_end():
            break
        op = sc.next()
        if op[1] == "+":
            sign = Fraction(1)
        elif op[1] == "-":
            sign = Fraction(-1)
        else:
            raise InputSyntaxError(f"expected '+' or '-' between terms, got {op[1]!r}", sc.line, op[2])
        first = False
    if not terms:
        raise InputSyntaxError("query has no nonzero terms", sc.line, 1)
    return EffectQuery(terms=tuple(terms))


def parse_constraints(text: str, g: CausalGraph) -> list[ConstraintStatement]:
    """Parse constraint statements, one per nonempty line."""
    out: list[ConstraintStatement] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sc = _Scanner(line, line=lineno)
        lhs = _parse_counterfactual_term(sc, g)
        rel = sc.next()
        relation = {"<=": "<=", ">=": ">=", "=": "=", "==": "=", "≤": "<=", "≥": ">="}.get(rel[1])
        if relation is None:
            raise InputSyntaxError(f"expected '=', '<=' or '>=', got {rel[1]!r}", lineno, rel[2])
        tok = sc.peek()
        if tok is None:
            raise InputSyntaxError("missing right-hand side", lineno, len(line) + 1)
        rhs: CounterfactualTerm | int
        if tok[0] == "int":
            sc.next()
            rhs = int(tok[1])
            _check_value(g, lhs.variable, rhs, lineno, tok[2])
        else:
            rhs = _parse_counterfactual_term(sc, g)
        if not sc.at_end():
            extra = sc.next()
            raise InputSyntaxError(f"unexpected trailing input {extra[1]!r}", lineno, extra[2])
        out.append(ConstraintStatement(lhs=lhs, relation=relation, rhs=rhs))
    return out


def _parse_counterfactual_term(sc: _Scanner, g: CausalGraph) -> CounterfactualTerm:
    kind, name, col = sc.next()
    if kind != "name":
        raise InputSyntaxError(f"expected a variable name, got {name!r}", sc.line, col)
    _check_variable(g, name, sc.line, col, intervened=False)
    if g.variable(name).latent:
        raise InputSyntaxError(f"constraint references latent variable {name!r}", sc.line, col)
    interventions: tuple[InterventionAssignment, ...] = ()
    tok = sc.peek()
    if tok is not None and tok[1] == "(":
        sc.next()
        interventions = _parse_assignments(sc, g)
        sc.expect(")")
    return CounterfactualTerm(variable=name, interventions=interventions)


# ---------------------------------------------------------------------------
# Formatting


def _format_assignment(a: InterventionAssignment) -> str:
    if a.value is not None:
        return f"{a.variable} = {a.value}"
    inner = ", ".join(_format_assignment(n) for n in a.nested)
    return f"{a.variable}({inner})"


def _format_event(e: OutcomeEvent) -> str:
    if e.interventions:
        inner = ", ".join(_format_assignment(a) for a in e.interventions)
        return f"{e.variable}({inner}) = {e.value}"
    return f"{e.variable} = {e.value}"


def format_effect(q: EffectQuery) -> str:
    """Canonical text for a query; parsing it back yields an identical AST."""
    parts: list[str] = []
    for i, term in enumerate(q.terms):
        coeff = term.coefficient
        body = "p{" + ", ".join(_format_event(e) for e in term.events) + "}"
        mag = abs(coeff)
        prefix = "" if mag == 1 else (f"{mag.numerator} " if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator} ")
        if i == 0:
            sign = "-" if coeff < 0 else ""
            parts.append(f"{sign}{prefix}{body}")
        else:
            parts.append(("- " if coeff < 0 else "+ ") + f"{prefix}{body}")
    return " ".join(parts)


def format_constraint(c: ConstraintStatement) -> str:
    def term_text(t: CounterfactualTerm | int) -> str:
        if isinstance(t, int):
            return str(t)
        if t.interventions:
            inner = ", ".join(_format_assignment(a) for a in t.interventions)
            return f"{t.variable}({inner})"
        return t.variable

    return f"{term_text(c.lhs)} {c.relation} {term_text(c.rhs)}"


# ---------------------------------------------------------------------------
# Validation


def _assignment_depth(a: InterventionAssignment) -> int:
    if a.nested is None:
        return 1
    return 1 + max(_assignment_depth(n) for n in a.nested)


def _event_depth(e: OutcomeEvent) -> int:
    if not e.interventions:
        return 0
    return max(_assignment_depth(a) for a in e.interventions)


def _walk_targets(host: str, assignments: tuple[InterventionAssignment, ...]):
    """Yield (intervened variable, variable whose value it feeds) pairs."""
    for a in assignments:
        yield a.variable, host
        if a.nested is not None:
            yield from _walk_targets(a.variable, a.nested)


def validate_effect(q: EffectQuery, g: CausalGraph) -> ValidationReport:
    """Check the restrictions on queries.

    Rejects outcomes on the left side or on latent variables, interventions on
    variables with no directed path to what they feed, nesting deeper than the
    longest directed path, and queries whose value depends on the left-side
    marginal distribution (decided by response-function reduction).
    """
    violations: list[Violation] = []
    longest = g.longest_path_edges()
    for term in q.terms:
        for event in term.events:
            var = g.variable(event.variable)
            if var.latent:
                violations.append(Violation(
                    "LATENT_OUTCOME", f"query asserts a value of latent variable {var.name}", var.name))
                continue
            if var.side == LEFT:
                violations.append(Violation(
                    "OUTCOME_ON_LEFT",
                    f"outcome variable {var.name} is on the left side; each outcome must be on the right",
                    var.name,
                ))
            depth = _event_depth(event)
            if depth > longest:
                violations.append(Violation(
                    "NESTING_TOO_DEEP",
                    f"nested interventions reach depth {depth} but the longest directed path has {longest} edges",
                    event.variable,
                ))
            for target, host in _walk_targets(event.variable, event.interventions):
                if not g.is_ancestor(target, host):
                    violations.append(Violation(
                        "INTERVENTION_NOT_ANCESTOR",
                        f"intervention on {target} cannot influence {host}: no directed path",
                        target,
                    ))
    if violations:
        return ValidationReport(tuple(violations))

    # Reduction-based check: every term must be constant across left-side
    # response configurations, else the query depends on the left marginal.
    from .response import create_response_function_table, effect_left_dependence

    table = create_response_function_table(g)
    dependent = effect_left_dependence(table, g, q)
    for term_index in dependent:
        violations.append(Violation(
            "LEFT_DEPENDENT_QUERY",
            f"term {term_index + 1} takes different values across left-side configurations; "
            "its probability is not a function of the right-side response distribution",
            format_effect(EffectQuery(terms=(q.terms[term_index],))),
        ))
    return ValidationReport(tuple(violations))
