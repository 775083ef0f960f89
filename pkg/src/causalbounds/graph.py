"""Two-sided causal DAGs: definition, text format, validation, confounder augmentation.

A graph splits its observed variables into a left and a right side.  Causal
influence may cross sides only left-to-right, and unmeasured confounding is
allowed within each side but never across.  The unmeasured confounders (one
per nonempty side) are ordinary latent variables here; all downstream
computation works off the observed structure alone, so declaring them
explicitly and adding them via :func:`augment_confounders` are equivalent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .errors import InputSyntaxError, ValidationFailure

LEFT = "left"
RIGHT = "right"

_IDENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True, slots=True)
class VariableSpec:
    """One variable of the DAG.  Values of an observed variable are 0..cardinality-1."""

    name: str
    side: str = RIGHT
    cardinality: int = 2
    latent: bool = False
    exposure: bool = False
    outcome: bool = False


@dataclass(frozen=True, slots=True)
class EdgeSpec:
    src: str
    dst: str
    monotone: bool = False


@dataclass(frozen=True, slots=True)
class Violation:
    code: str
    message: str
    element: str = ""


@dataclass(frozen=True, slots=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


@dataclass(frozen=True)
class CausalGraph:
    """Immutable annotated DAG.  Declaration order of ``variables`` is the
    canonical order used for parameter naming and response-vector encoding
    everywhere downstream."""

    variables: tuple[VariableSpec, ...]
    edges: tuple[EdgeSpec, ...]
    augmented: bool = False

    def variable(self, name: str) -> VariableSpec:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def has_variable(self, name: str) -> bool:
        return any(v.name == name for v in self.variables)

    @property
    def observed(self) -> tuple[VariableSpec, ...]:
        return tuple(v for v in self.variables if not v.latent)

    @property
    def left_observed(self) -> tuple[VariableSpec, ...]:
        return tuple(v for v in self.observed if v.side == LEFT)

    @property
    def right_observed(self) -> tuple[VariableSpec, ...]:
        return tuple(v for v in self.observed if v.side == RIGHT)

    def observed_parents(self, name: str) -> tuple[str, ...]:
        """Observed parents of ``name``, in canonical (declaration) order."""
        direct = {e.src for e in self.edges if e.dst == name}
        return tuple(v.name for v in self.observed if v.name in direct)

    def children(self, name: str) -> tuple[str, ...]:
        direct = {e.dst for e in self.edges if e.src == name}
        return tuple(v.name for v in self.variables if v.name in direct)

    def exposure_variable(self) -> VariableSpec | None:
        for v in self.variables:
            if v.exposure:
                return v
        return None

    def outcome_variable(self) -> VariableSpec | None:
        for v in self.variables:
            if v.outcome:
                return v
        return None

    def is_ancestor(self, a: str, b: str) -> bool:
        """True when a directed path a -> ... -> b exists."""
        stack = [a]
        seen = set()
        while stack:
            cur = stack.pop()
            for e in self.edges:
                if e.src == cur and e.dst not in seen:
                    if e.dst == b:
                        return True
                    seen.add(e.dst)
                    stack.append(e.dst)
        return False

    def longest_path_edges(self) -> int:
        """Edge count of the longest directed path (graph must be acyclic)."""
        order = _topological_order(self)
        if order is None:
            return 0
        depth = {name: 0 for name in order}
        for name in order:
            for e in self.edges:
                if e.src == name:
                    depth[e.dst] = max(depth[e.dst], depth[name] + 1)
        return max(depth.values(), default=0)


def _topological_order(g: CausalGraph) -> list[str] | None:
    """Names in a topological order, or None when the edge set has a cycle."""
    indeg = {v.name: 0 for v in g.variables}
    for e in g.edges:
        indeg[e.dst] += 1
    queue = [n for n, d in indeg.items() if d == 0]
    out: list[str] = []
    while queue:
        cur = queue.pop(0)
        out.append(cur)
        for e in g.edges:
            if e.src == cur:
                indeg[e.dst] -= 1
                if indeg[e.dst] == 0:
                    queue.append(e.dst)
    if len(out) != len(g.variables):
        return None
    return out


# ---------------------------------------------------------------------------
# Text format


def parse_graph_spec(text: str) -> CausalGraph:
    """Parse the line-oriented graph specification document.

    Grammar (one statement per line, '#' starts a comment)::

        node NAME [side=left|right] [card=K] [latent] [exposure] [outcome]
        edge A -> B [monotone]

    Defaults: side=right, card=2, not latent.  Declaring any latent node marks
    the graph as already confounder-augmented.
    """
    variables: list[VariableSpec] = []
    edges: list[EdgeSpec] = []
    names: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.replace("->", " -> ").split()
        kind = tokens[0]
        if kind == "node":
            if len(tokens) < 2:
                raise InputSyntaxError("node statement needs a name", lineno, len(raw) + 1)
            name = tokens[1]
            if not _IDENT_RE.match(name):
                raise InputSyntaxError(f"invalid variable name {name!r}", lineno, raw.find(name) + 1)
            if name in names:
                raise InputSyntaxError(f"duplicate variable {name!r}", lineno, raw.find(name) + 1)
            names.add(name)
            spec = {"side": RIGHT, "cardinality": 2, "latent": False, "exposure": False, "outcome": False}
            for tok in tokens[2:]:
                col = raw.find(tok) + 1
                if tok == "latent":
                    spec["latent"] = True
                elif tok == "exposure":
                    spec["exposure"] = True
                elif tok == "outcome":
                    spec["outcome"] = True
                elif tok.startswith("side="):
                    value = tok[5:]
                    if value not in (LEFT, RIGHT):
                        raise InputSyntaxError(f"side must be left or right, got {value!r}", lineno, col)
                    spec["side"] = value
                elif tok.startswith("card="):
                    try:
                        spec["cardinality"] = int(tok[5:])
                    except ValueError:
                        raise InputSyntaxError(f"card expects an integer, got {tok[5:]!r}", lineno, col) from None
                else:
                    raise InputSyntaxError(f"unknown node attribute {tok!r}", lineno, col)
            variables.append(VariableSpec(name=name, **spec))
        elif kind == "edge":
            if len(tokens) not in (4, 5) or tokens[2] != "->":
                raise InputSyntaxError("edge statement must look like 'edge A -> B [monotone]'", lineno, 1)
            src, dst = tokens[1], tokens[3]
            monotone = False
            if len(tokens) == 5:
                if tokens[4] != "monotone":
                    raise InputSyntaxError(f"unknown edge attribute {tokens[4]!r}", lineno, raw.find(tokens[4]) + 1)
                monotone = True
            for endpoint in (src, dst):
                if endpoint not in names:
                    raise InputSyntaxError(f"edge references undeclared variable {endpoint!r}", lineno, raw.find(endpoint) + 1)
            edges.append(EdgeSpec(src=src, dst=dst, monotone=monotone))
        else:
            raise InputSyntaxError(f"expected 'node' or 'edge', got {kind!r}", lineno, raw.find(kind) + 1)

    augmented = any(v.latent for v in variables)
    g = CausalGraph(variables=tuple(variables), edges=tuple(edges), augmented=augmented)
    if _topological_order(g) is None:
        raise InputSyntaxError("cycle detected in edge set")
    return g


def serialize_graph_spec(g: CausalGraph) -> str:
    """Canonical text form; parse(serialize(g)) reproduces g exactly."""
    lines = []
    for v in g.variables:
        parts = [f"node {v.name}"]
        if v.side != RIGHT:
            parts.append("side=left")
        if v.cardinality != 2:
            parts.append(f"card={v.cardinality}")
        if v.latent:
            parts.append("latent")
        if v.exposure:
            parts.append("exposure")
        if v.outcome:
            parts.append("outcome")
        lines.append(" ".join(parts))
    for e in g.edges:
        suffix = " monotone" if e.monotone else ""
        lines.append(f"edge {e.src} -> {e.dst}{suffix}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Validation and augmentation


def validate_graph(g: CausalGraph) -> ValidationReport:
    """Report every violation of the supported class of DAGs.

    Checks: right-to-left edges, cycles, explicit cross-side common parents,
    invalid cardinalities, and an outcome flag on the left side.
    """
    violations: list[Violation] = []
    sides = {v.name: v.side for v in g.variables}
    latent = {v.name for v in g.variables if v.latent}

    for e in g.edges:
        src_obs = e.src not in latent
        dst_obs = e.dst not in latent
        if src_obs and dst_obs and sides[e.src] == RIGHT and sides[e.dst] == LEFT:
            violations.append(Violation(
                "RIGHT_TO_LEFT",
                f"edge {e.src} -> {e.dst} goes from the right side to the left; edges must go from L to R",
                f"{e.src}->{e.dst}",
            ))

    if _topological_order(g) is None:
        violations.append(Violation("CYCLE", "edge set contains a directed cycle"))

    for name in latent:
        child_sides = {sides[c] for c in g.children(name) if c not in latent}
        if len(child_sides) > 1:
            violations.append(Violation(
                "CROSS_SIDE_CONFOUNDER",
                f"latent {name} is a common parent of variables on both sides",
                name,
            ))

    for v in g.variables:
        if not v.latent and v.cardinality < 2:
            violations.append(Violation(
                "INVALID_CARDINALITY",
                f"observed variable {v.name} needs cardinality >= 2, got {v.cardinality}",
                v.name,
            ))
        if v.outcome and v.side == LEFT:
            violations.append(Violation(
                "OUTCOME_ON_LEFT", f"outcome variable {v.name} must be on the right side", v.name))

    return ValidationReport(tuple(violations))


def _fresh_name(g: CausalGraph, base: str) -> str:
    if not g.has_variable(base):
        return base
    k = 1
    while g.has_variable(f"{base}{k}"):
        k += 1
    return f"{base}{k}"


def augment_confounders(g: CausalGraph) -> CausalGraph:
    """Add the assumed within-side confounders: a latent parent of every
    right-side observed variable, and one of every left-side observed variable
    when the left side is nonempty."""
    if g.augmented:
        raise ValueError("graph is already confounder-augmented")
    report = validate_graph(g)
    if not report.ok:
        raise ValidationFailure(report)

    variables = list(g.variables)
    edges = list(g.edges)
    left = g.left_observed
    right = g.right_observed
    if left:
        ul = _fresh_name(g, "Ul")
        variables.append(VariableSpec(name=ul, side=LEFT, latent=True))
        edges.extend(EdgeSpec(src=ul, dst=v.name) for v in left)
    if right:
        ur = _fresh_name(g, "Ur")
        variables.append(VariableSpec(name=ur, side=RIGHT, latent=True))
        edges.extend(EdgeSpec(src=ur, dst=v.name) for v in right)
    return CausalGraph(variables=tuple(variables), edges=tuple(edges), augmented=True)


def ensure_augmented(g: CausalGraph) -> CausalGraph:
    return g if g.augmented else augment_confounders(g)


def default_effect_text(g: CausalGraph) -> str | None:
    """Total causal risk difference for the flagged exposure/outcome pair."""
    exposure = g.exposure_variable()
    outcome = g.outcome_variable()
    if exposure is None or outcome is None:
        return None
    x, y = exposure.name, outcome.name
    return f"p{{{y}({x} = 1) = 1}} - p{{{y}({x} = 0) = 1}}"
