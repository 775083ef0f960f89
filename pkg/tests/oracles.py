"""Independent oracles the product code is tested against.

Each oracle reimplements a contract through a different route than the
package: explicit function tables with topological (non-recursive) evaluation
for structural equations, graph surgery for interventions, a numeric LP
solver for bound tightness, and tight-row-subset enumeration for vertex sets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import numpy as np
from scipy.optimize import linprog


# ---------------------------------------------------------------------------
# Structural-equation oracle


def function_table(index: int, parent_cards: tuple[int, ...], card: int) -> dict:
    """Explicit map from parent assignment to output for one response index."""
    total = 1
    for c in parent_cards:
        total *= c
    outputs = []
    n = index
    for _ in range(total):
        outputs.append(n % card)
        n //= card
    assignments = list(product(*(range(c) for c in parent_cards)))
    return dict(zip(assignments, outputs))


def topological_names(graph) -> list[str]:
    observed = [v.name for v in graph.observed]
    remaining = set(observed)
    placed: list[str] = []
    while remaining:
        for name in observed:
            if name in remaining:
                parents = set(graph.observed_parents(name))
                if parents <= set(placed):
                    placed.append(name)
                    remaining.discard(name)
    return placed


def eval_all_natural(graph, rvec: dict, pins: dict | None = None) -> dict:
    """Topological evaluation of every observed variable (no recursion)."""
    pins = pins or {}
    values: dict[str, int] = {}
    for name in topological_names(graph):
        if name in pins:
            values[name] = pins[name]
            continue
        var = graph.variable(name)
        parents = graph.observed_parents(name)
        cards = tuple(graph.variable(p).cardinality for p in parents)
        tbl = function_table(rvec[name], cards, var.cardinality)
        values[name] = tbl[tuple(values[p] for p in parents)]
    return values


def counterfactual_value(graph, rvec: dict, var: str, interventions, pins: dict | None = None) -> int:
    """Graph-surgery semantics: resolve every intervention to a constant
    (recursing for nested settings), replace those variables' equations, then
    evaluate the mutilated system topologically."""
    pins = pins or {}
    fixed: dict[str, int] = {}
    for a in interventions:
        if a.value is not None:
            fixed[a.variable] = a.value
        else:
            fixed[a.variable] = counterfactual_value(graph, rvec, a.variable, a.nested, pins)
    values: dict[str, int] = {}
    for name in topological_names(graph):
        if name in fixed:
            values[name] = fixed[name]
        elif name in pins:
            values[name] = pins[name]
        else:
            v = graph.variable(name)
            parents = graph.observed_parents(name)
            cards = tuple(graph.variable(p).cardinality for p in parents)
            tbl = function_table(rvec[name], cards, v.cardinality)
            values[name] = tbl[tuple(values[p] for p in parents)]
    return values[var]


def term_truth(graph, rvec: dict, term, pins: dict | None = None) -> bool:
    return all(
        counterfactual_value(graph, rvec, e.variable, e.interventions, pins) == e.value
        for e in term.events
    )


# ---------------------------------------------------------------------------
# Numeric LP oracle


def lp_bounds(problem, values: dict[str, float]) -> tuple[float, float]:
    """min and max of the objective over {q >= 0, sum q = 1, P q = p}."""
    n = len(problem.q_names)
    a_eq = [[1.0] * n] + [[float(x) for x in row] for row in problem.matrix[1:]]
    b_eq = [1.0] + [values[p.name] for p in problem.parameters]
    c = [float(x) for x in problem.objective]
    lo = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    hi = linprog([-x for x in c], A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    assert lo.status == 0 and hi.status == 0, "oracle LP failed"
    return lo.fun, -hi.fun


def random_feasible_values(problem, rng: np.random.Generator) -> dict[str, float]:
    """Parameter values induced by a random distribution over admissible
    response vectors, hence feasible by construction."""
    n = len(problem.q_names)
    q = rng.exponential(size=n)
    q = q / q.sum()
    values = {}
    for i, p in enumerate(problem.parameters, start=1):
        values[p.name] = float(sum(qj for cj, qj in zip(problem.matrix[i], q) if cj))
    return values


# ---------------------------------------------------------------------------
# Vertex-set oracle


def solve_square(mat: list[tuple[Fraction, ...]], rhs: list[Fraction]) -> list[Fraction] | None:
    d = len(mat)
    aug = [list(mat[i]) + [rhs[i]] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][d] for i in range(d)]


def brute_force_vertices(A, b) -> set[tuple[Fraction, ...]]:
    """All feasible solutions of d-row tight subsets: exactly the vertex set."""
    rows = [tuple(Fraction(x) for x in row) for row in A]
    rhs = [Fraction(x) for x in b]
    d = len(rows[0])
    found: set[tuple[Fraction, ...]] = set()
    for subset in combinations(range(len(rows)), d):
        sol = solve_square([rows[i] for i in subset], [rhs[i] for i in subset])
        if sol is None:
            continue
        if all(sum(a * y for a, y in zip(rows[i], sol)) <= rhs[i] for i in range(len(rows))):
            found.add(tuple(sol))
    return found


def matrix_rank(rows) -> int:
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    n_cols = len(work[0]) if work else 0
    r0 = 0
    for col in range(n_cols):
        piv = next((r for r in range(r0, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[r0], work[piv] = work[piv], work[r0]
        for r in range(len(work)):
            if r != r0 and work[r][col]:
                f = work[r][col] / work[r0][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[r0])]
        rank += 1
        r0 += 1
        if r0 == len(work):
            break
    return rank


def random_hpolytope(rng, dim: int, rows: int):
    """Random full-column-rank rational (A, b); may be empty or unbounded."""
    while True:
        A = [
            [Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2])) for _ in range(dim)]
            for _ in range(rows)
        ]
        if any(all(x == 0 for x in row) for row in A):
            continue
        if matrix_rank(A) == dim:
            b = [Fraction(rng.randint(-2, 8), rng.choice([1, 1, 2])) for _ in range(rows)]
            return A, b
