import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from causalbounds import (
    build_dual,
    dd_vertex_enumeration,
    evaluate_dual_vertex,
    make_expression,
    make_hpolyhedron,
)

import oracles


def test_unit_square():
    h = make_hpolyhedron(
        A=[[1, 0], [-1, 0], [0, 1], [0, -1]],
        b=[1, 0, 1, 0],
    )
    v = dd_vertex_enumeration(h)
    assert set(v.vertices) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert v.rays == () and v.lineality == ()


def test_simplex():
    h = make_hpolyhedron(
        A=[[-1, 0], [0, -1], [1, 1]],
        b=[0, 0, 1],
    )
    v = dd_vertex_enumeration(h)
    assert set(v.vertices) == {(0, 0), (1, 0), (0, 1)}


def test_empty_polyhedron():
    h = make_hpolyhedron(A=[[1], [-1]], b=[-1, -1], dim=1)  # y <= -1 and y >= 1
    v = dd_vertex_enumeration(h)
    assert v.is_empty
    assert v.vertices == () and v.rays == () and v.lineality == ()


def test_unbounded_quadrant():
    h = make_hpolyhedron(A=[[-1, 0], [0, -1]], b=[0, 0])
    v = dd_vertex_enumeration(h)
    assert v.vertices == ((Fraction(0), Fraction(0)),)
    assert set(v.rays) == {(1, 0), (0, 1)}


def test_lineality_strip():
    # -1 <= y1 <= 1, y2 free
    h = make_hpolyhedron(A=[[1, 0], [-1, 0]], b=[1, 1])
    v = dd_vertex_enumeration(h)
    assert v.lineality == ((Fraction(0), Fraction(1)),)
    assert {p[0] for p in v.vertices} == {-1, 1}


def test_equality_rows():
    # square intersected with the diagonal y1 = y2
    h = make_hpolyhedron(
        A=[[1, 0], [-1, 0], [0, 1], [0, -1], [1, -1]],
        b=[1, 0, 1, 0, 0],
        equalities=[4],
    )
    v = dd_vertex_enumeration(h)
    assert set(v.vertices) == {(0, 0), (1, 1)}


def test_single_point():
    h = make_hpolyhedron(A=[[1, 0], [0, 1]], b=[2, 3], equalities=[0, 1])
    v = dd_vertex_enumeration(h)
    assert v.vertices == ((2, 3),)
    assert v.rays == ()


def test_zero_dimensional():
    h = make_hpolyhedron(A=[], b=[], dim=0)
    assert dd_vertex_enumeration(h).vertices == ((),)


def test_whole_space():
    h = make_hpolyhedron(A=[[0, 0]], b=[1])
    v = dd_vertex_enumeration(h)
    assert v.vertices == ((0, 0),)
    assert len(v.lineality) == 2


def test_determinism():
    rng = random.Random(5)
    for _ in range(10):
        dim = rng.randint(1, 4)
        A, b = oracles.random_hpolytope(rng, dim, rng.randint(dim, 10))
        h = make_hpolyhedron(A, b)
        first = dd_vertex_enumeration(h)
        second = dd_vertex_enumeration(h)
        assert first == second


def test_exactness_fraction_outputs():
    h = make_hpolyhedron(A=[[3, 0], [-2, 0], [0, 7], [0, -5]], b=[1, 1, 2, 3])
    v = dd_vertex_enumeration(h)
    for vertex in v.vertices:
        assert all(isinstance(x, Fraction) for x in vertex)
    assert (Fraction(1, 3), Fraction(2, 7)) in set(v.vertices)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_polytopes_match_subset_oracle(seed):
    rng = random.Random(seed)
    for _ in range(25):
        dim = rng.randint(1, 4)
        rows = rng.randint(dim, 12)
        A, b = oracles.random_hpolytope(rng, dim, rows)
        got = set(dd_vertex_enumeration(make_hpolyhedron(A, b)).vertices)
        expected = oracles.brute_force_vertices(A, b)
        assert got == expected


def test_vertices_satisfy_halfspaces_with_tight_rank():
    rng = random.Random(11)
    for _ in range(15):
        dim = rng.randint(2, 4)
        A, b = oracles.random_hpolytope(rng, dim, rng.randint(dim + 1, 10))
        v = dd_vertex_enumeration(make_hpolyhedron(A, b))
        for vertex in v.vertices:
            tight = []
            for row, rhs in zip(A, b):
                value = sum(a * x for a, x in zip(row, vertex))
                assert value <= rhs
                if value == rhs:
                    tight.append(row)
            assert oracles.matrix_rank(tight) == dim
        for ray in v.rays:
            for row in A:
                assert sum(a * x for a, x in zip(row, ray)) <= 0


def test_membership_convex_decomposition():
    """Sampled feasible points decompose over returned vertices and rays."""
    rng = random.Random(23)
    np_rng = np.random.default_rng(23)
    tried = 0
    for _ in range(40):
        if tried >= 8:
            break
        dim = rng.randint(2, 3)
        A, b = oracles.random_hpolytope(rng, dim, rng.randint(dim + 1, 8))
        vrep = dd_vertex_enumeration(make_hpolyhedron(A, b))
        if vrep.is_empty:
            continue
        a_float = np.array([[float(x) for x in row] for row in A])
        b_float = np.array([float(x) for x in b])
        # find an interior-ish feasible point via a random bounded LP
        c = np_rng.normal(size=dim)
        res = linprog(c, A_ub=a_float, b_ub=b_float, bounds=(-50, 50), method="highs")
        if res.status != 0:
            continue
        point = res.x
        tried += 1
        gens = [list(map(float, v)) for v in vrep.vertices] + [list(map(float, r)) for r in vrep.rays]
        k = len(vrep.vertices)
        # lambda >= 0, mu >= 0, sum lambda = 1, sum lambda v + sum mu r = point
        a_eq = np.vstack([
            np.array(gens).T,
            np.concatenate([np.ones(k), np.zeros(len(gens) - k)]),
        ])
        b_eq = np.concatenate([point, [1.0]])
        fit = linprog(np.zeros(len(gens)), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
        assert fit.status == 0, "feasible point not covered by V-representation"
    assert tried >= 5


def test_debug_dumps_round_numbers():
    from causalbounds.polytope import dump_hpolyhedron, dump_vrepresentation

    h = make_hpolyhedron(A=[[Fraction(1, 2), 0], [0, 1]], b=[1, Fraction(3, 4)], equalities=[1])
    text = dump_hpolyhedron(h)
    assert "1/2 0 <= 1" in text
    assert "0 1 = 3/4" in text
    v = dd_vertex_enumeration(make_hpolyhedron(A=[[1], [-1]], b=[Fraction(1, 3), 0], dim=1))
    dump = dump_vrepresentation(v)
    assert "vertex 0" in dump and "vertex 1/3" in dump


def test_build_dual_dimensions(iv_problem):
    dual = build_dual(iv_problem, "lower")
    assert dual.polyhedron.dim == 7
    assert len(dual.polyhedron.A) == 16
    assert dual.row_labels[0] == "1"


def test_evaluate_dual_vertex_signs(iv_problem):
    lower = build_dual(iv_problem, "lower")
    vertex = tuple(Fraction(x) for x in (1, -1, 0, 0, 0, 0, 0))
    expr = evaluate_dual_vertex(lower, vertex)
    assert expr.constant == 1
    assert expr.coefficient("p00_0") == -1
    upper = build_dual(iv_problem, "upper")
    expr_u = evaluate_dual_vertex(upper, vertex)
    assert expr_u.constant == -1
    assert expr_u.coefficient("p00_0") == 1


def test_zero_vertex_is_constant_zero(iv_problem):
    dual = build_dual(iv_problem, "lower")
    expr = evaluate_dual_vertex(dual, tuple(Fraction(0) for _ in range(7)))
    assert expr == make_expression(0, {})
