"""Tight symbolic bounds on causal effects over two-sided DAGs.

Typical flow::

    from causalbounds import analyze_graph, optimize_effect, evaluate_bounds

    problem = analyze_graph(graph_text, None, "p{Y(X = 1) = 1} - p{Y(X = 0) = 1}")
    bounds = optimize_effect(problem)
    low, high = evaluate_bounds(bounds, {"p00_0": 0.25, ...})
"""

from .errors import (
    CausalBoundsError,
    EvaluationError,
    GeometryError,
    InfeasibleConstraintsError,
    InputSyntaxError,
    UnsupportedConstraintError,
    ValidationFailure,
)
from .graph import (
    CausalGraph,
    EdgeSpec,
    ValidationReport,
    VariableSpec,
    Violation,
    augment_confounders,
    default_effect_text,
    parse_graph_spec,
    serialize_graph_spec,
    validate_graph,
)
from .query import (
    ConstraintStatement,
    EffectQuery,
    EffectTerm,
    InterventionAssignment,
    OutcomeEvent,
    format_effect,
    parse_constraints,
    parse_effect,
    validate_effect,
)
from .response import (
    ResponseFunctionTable,
    admissible_response_indices,
    create_response_function_table,
    eval_response,
    eval_response_under_intervention,
)
from .problem import (
    LinearCausalProblem,
    Parameter,
    analyze_graph,
    create_constraint_matrix,
    create_effect_vector,
    enumerate_parameters,
    problem_payload,
    update_effect,
)
from .polytope import (
    DualProgram,
    HPolyhedron,
    VRepresentation,
    build_dual,
    dd_vertex_enumeration,
    evaluate_dual_vertex,
    make_hpolyhedron,
)
from .expressions import LinearExpression, canonicalize_expression, make_expression, render_expression
from .bounds import (
    BoundsEvaluation,
    SimulationReport,
    SymbolicBoundPair,
    bounds_payload,
    evaluate_bounds,
    evaluate_bounds_exact,
    latex_bounds,
    optimize_effect,
    render_bounds_text,
    simulate_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "CausalBoundsError",
    "EvaluationError",
    "GeometryError",
    "InfeasibleConstraintsError",
    "InputSyntaxError",
    "UnsupportedConstraintError",
    "ValidationFailure",
    "CausalGraph",
    "EdgeSpec",
    "VariableSpec",
    "Violation",
    "ValidationReport",
    "augment_confounders",
    "default_effect_text",
    "parse_graph_spec",
    "serialize_graph_spec",
    "validate_graph",
    "ConstraintStatement",
    "EffectQuery",
    "EffectTerm",
    "InterventionAssignment",
    "OutcomeEvent",
    "format_effect",
    "parse_constraints",
    "parse_effect",
    "validate_effect",
    "ResponseFunctionTable",
    "admissible_response_indices",
    "create_response_function_table",
    "eval_response",
    "eval_response_under_intervention",
    "LinearCausalProblem",
    "Parameter",
    "analyze_graph",
    "create_constraint_matrix",
    "create_effect_vector",
    "enumerate_parameters",
    "problem_payload",
    "update_effect",
    "DualProgram",
    "HPolyhedron",
    "VRepresentation",
    "build_dual",
    "dd_vertex_enumeration",
    "evaluate_dual_vertex",
    "make_hpolyhedron",
    "LinearExpression",
    "canonicalize_expression",
    "make_expression",
    "render_expression",
    "BoundsEvaluation",
    "SimulationReport",
    "SymbolicBoundPair",
    "bounds_payload",
    "evaluate_bounds",
    "evaluate_bounds_exact",
    "latex_bounds",
    "optimize_effect",
    "render_bounds_text",
    "simulate_bounds",
    "__version__",
]
