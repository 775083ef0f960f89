"""Exact-rational polyhedral geometry.

Implements the double description method: converting a halfspace description
{y : A y <= b} into its minimal vertex/ray/lineality description, over exact
rationals (internally primitive integer vectors).  No floating point enters
this module.

The bounding LP's dual is assembled here too.  For a primal
``min c.q  s.t.  q >= 0, R q = (1, p)`` restricted to a maximal independent
row subset, the dual feasible region {y : R^T y <= c} is pointed, every
vertex yields one affine expression in the observable parameters, and the
tight lower bound is the maximum over the vertex expressions (upper bounds
come from negating the objective).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import TYPE_CHECKING, Sequence

from .errors import GeometryError
from .expressions import LinearExpression, make_expression

if TYPE_CHECKING:  # pragma: no cover
    from .problem import LinearCausalProblem

LOWER = "lower"
UPPER = "upper"


@dataclass(frozen=True)
class HPolyhedron:
    """{y in R^dim : A y <= b}, with rows listed in ``equalities`` read as A y = b."""

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    dim: int
    equalities: frozenset[int] = frozenset()

    def __post_init__(self):
        if any(len(row) != self.dim for row in self.A):
            raise ValueError("inconsistent row lengths")
        if len(self.A) != len(self.b):
            raise ValueError("A and b disagree on row count")


def make_hpolyhedron(A: Sequence[Sequence], b: Sequence, dim: int | None = None,
                     equalities: Sequence[int] = ()) -> HPolyhedron:
    rows = tuple(tuple(Fraction(x) for x in row) for row in A)
    if dim is None:
        if not rows:
            raise ValueError("dimension required for an empty constraint list")
        dim = len(rows[0])
    return HPolyhedron(A=rows, b=tuple(Fraction(x) for x in b), dim=dim,
                       equalities=frozenset(equalities))


@dataclass(frozen=True)
class VRepresentation:
    """Minimal generator description: conv(vertices) + cone(rays) + span(lineality).

    When the lineality space is nonzero the polyhedron has no true vertices;
    the listed points are canonical representatives with zeros outside the
    pivot coordinates.  An empty polyhedron has all three parts empty.
    """

    vertices: tuple[tuple[Fraction, ...], ...] = ()
    rays: tuple[tuple[Fraction, ...], ...] = ()
    lineality: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.vertices


# ---------------------------------------------------------------------------
# Integer-vector helpers


def _primitive(vec) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction."""
    fracs = [Fraction(x) for x in vec]
    denom = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _rank(rows: list[tuple[int, ...]]) -> int:
    """Rank of integer rows, exact Gaussian elimination."""
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(cols):
        piv = next((r for r in range(pivot_row, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[pivot_row], work[piv] = work[piv], work[pivot_row]
        base = work[pivot_row]
        for r in range(pivot_row + 1, len(work)):
            if work[r][col]:
                f = work[r][col] / base[col]
                work[r] = [a - f * bb for a, bb in zip(work[r], base)]
        pivot_row += 1
        rank += 1
        if pivot_row == len(work):
            break
    return rank


def _rref_pivots_and_null(A: tuple[tuple[Fraction, ...], ...], dim: int):
    """Pivot columns of A plus a primitive basis of its null space."""
    work = [list(row) for row in A]
    pivots: list[int] = []
    row = 0
    for col in range(dim):
        piv = next((r for r in range(row, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        base = [x / work[row][col] for x in work[row]]
        work[row] = base
        for r in range(len(work)):
            if r != row and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * bb for a, bb in zip(work[r], base)]
        pivots.append(col)
        row += 1
        if row == len(work):
            break
    free = [c for c in range(dim) if c not in pivots]
    null_basis = []
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        null_basis.append(_primitive(vec))
    return pivots, null_basis


def _solve_unit(B: list[tuple[int, ...]], j: int) -> list[Fraction]:
    """Solve B x = -e_j for square integer B (columns of -B^{-1})."""
    d = len(B)
    aug = [[Fraction(x) for x in row] + [Fraction(-1) if i == j else Fraction(0)]
           for i, row in enumerate(B)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col]), None)
        if piv is None:
            raise GeometryError("singular basis in double description initialization")
        aug[col], aug[piv] = aug[piv], aug[col]
        base = [x / aug[col][col] for x in aug[col]]
        aug[col] = base
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * bb for a, bb in zip(aug[r], base)]
    return [aug[i][d] for i in range(d)]


# ---------------------------------------------------------------------------
# Double description core: extreme rays of a pointed cone {x : M x <= 0}


def _extreme_rays(rows: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Extreme rays via incremental halfspace insertion in the given order.

    Caller guarantees rank(rows) == d, i.e. the cone is pointed.  Rays carry a
    tightness bitmask over the processed rows; a pair is combined only when it
    passes the algebraic adjacency test (tight-set rank d-2).
    """
    d = len(rows[0])

    # initial full-rank subset, scanned in order
    basis_idx: list[int] = []
    probe: list[tuple[int, ...]] = []
    for i, row in enumerate(rows):
        if _rank(probe + [row]) > len(basis_idx):
            basis_idx.append(i)
            probe.append(row)
        if len(basis_idx) == d:
            break
    if len(basis_idx) < d:
        raise GeometryError("cone is not pointed: fewer independent rows than dimensions")

    B = [rows[i] for i in basis_idx]
    processed: list[tuple[int, ...]] = list(B)
    # ray j of {Bx <= 0} is column j of -B^{-1}: tight on all basis rows but j
    rays: list[tuple[tuple[int, ...], int]] = []
    for j in range(d):
        vec = _primitive(_solve_unit(B, j))
        mask = 0
        for i in range(d):
            if i != j:
                mask |= 1 << i
        rays.append((vec, mask))

    remaining = [i for i in range(len(rows)) if i not in set(basis_idx)]
    for idx in remaining:
        m = rows[idx]
        bit = 1 << len(processed)
        keep: list[tuple[tuple[int, ...], int]] = []
        plus: list[tuple[tuple[int, ...], int, int]] = []
        minus: list[tuple[tuple[int, ...], int, int]] = []
        for vec, mask in rays:
            val = _dot(m, vec)
            if val > 0:
                plus.append((vec, mask, val))
            elif val < 0:
                minus.append((vec, mask, val))
                keep.append((vec, mask))
            else:
                keep.append((vec, mask | bit))

        if plus:
            fresh: list[tuple[tuple[int, ...], int]] = []
            for pvec, pmask, pval in plus:
                for nvec, nmask, nval in minus:
                    common = pmask & nmask
                    if common.bit_count() < d - 2:
                        continue
                    tight = [processed[i] for i in range(len(processed)) if common >> i & 1]
                    if tight and _rank(tight) != d - 2:
                        continue
                    if not tight and d > 2:
                        continue
                    combined = _primitive(tuple(pval * nc - nval * pc for pc, nc in zip(pvec, nvec)))
                    fresh.append((combined, (common | bit)))
            seen = {vec for vec, _ in keep}
            for vec, mask in fresh:
                if vec not in seen:
                    seen.add(vec)
                    keep.append((vec, mask))
            rays = keep
        else:
            rays = keep
        processed.append(m)
        if not rays:
            break
    return [vec for vec, _ in rays]


# ---------------------------------------------------------------------------
# H-to-V conversion


def dd_vertex_enumeration(h: HPolyhedron) -> VRepresentation:
    """Minimal V-representation of an H-polyhedron, exact and deterministic.

    Handles empty, unbounded, and lower-dimensional inputs; output lists are
    sorted lexicographically.
    """
    dim = h.dim
    rows: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for i, (a, bb) in enumerate(zip(h.A, h.b)):
        rows.append((a, bb))
        if i in h.equalities:
            rows.append((tuple(-x for x in a), -bb))

    if dim == 0:
        feasible = all(bb >= 0 for _, bb in rows)
        return VRepresentation(vertices=((),) if feasible else ())

    stacked = tuple(a for a, _ in rows)
    pivots, null_basis = _rref_pivots_and_null(stacked, dim)
    k = len(pivots)

    if k == 0:
        # A is all zeros: the polyhedron is empty or the whole space
        feasible = all(bb >= 0 for _, bb in rows)
        if not feasible:
            return VRepresentation()
        unit = tuple(
            tuple(Fraction(1) if j == c else Fraction(0) for j in range(dim)) for c in range(dim))
        zero = tuple(Fraction(0) for _ in range(dim))
        return VRepresentation(vertices=(zero,), lineality=unit)

    # homogenize onto the pivot coordinates: x = (t, z), rows -b t + A' z <= 0
    hom_rows: list[tuple[int, ...]] = [tuple([-1] + [0] * k)]
    for a, bb in rows:
        hom_rows.append(_primitive((-bb,) + tuple(a[j] for j in pivots)))

    gens = _extreme_rays(hom_rows)

    def lift(vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        full = [Fraction(0)] * dim
        for value, col in zip(vec, pivots):
            full[col] = Fraction(value)
        return tuple(full)

    vertices = []
    rays = []
    for g in gens:
        t = g[0]
        if t > 0:
            vertices.append(lift([Fraction(x, t) for x in g[1:]]))
        elif any(g[1:]):
            rays.append(lift(g[1:]))
    if not vertices:
        return VRepresentation()
    # null-space vectors are already full-dimensional
    lineality = tuple(sorted(tuple(Fraction(x) for x in v) for v in null_basis))
    return VRepresentation(
        vertices=tuple(sorted(vertices)),
        rays=tuple(sorted(rays)),
        lineality=lineality,
    )


# ---------------------------------------------------------------------------
# Debug dumps (one row per line, rationals as n/d)


def _row_text(values) -> str:
    out = []
    for x in values:
        f = Fraction(x)
        out.append(str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}")
    return " ".join(out)


def dump_hpolyhedron(h: HPolyhedron) -> str:
    lines = [f"H dim={h.dim} rows={len(h.A)}"]
    for i, (a, bb) in enumerate(zip(h.A, h.b)):
        rel = "=" if i in h.equalities else "<="
        lines.append(f"{_row_text(a)} {rel} {_row_text([bb])}")
    return "\n".join(lines) + "\n"


def dump_vrepresentation(v: VRepresentation) -> str:
    lines = [f"V vertices={len(v.vertices)} rays={len(v.rays)} lineality={len(v.lineality)}"]
    lines += [f"vertex {_row_text(p)}" for p in v.vertices]
    lines += [f"ray {_row_text(r)}" for r in v.rays]
    lines += [f"line {_row_text(l)}" for l in v.lineality]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Dual program of the bounding LP


@dataclass(frozen=True)
class DualProgram:
    """Dual feasible region plus the symbolic objective template.

    ``row_labels`` aligns the dual variables with the kept primal rows: the
    literal label "1" marks the normalization row (contributing the constant
    part of an evaluated expression) and every other label is a parameter
    name.  ``sense`` records which bound the vertex expressions deliver.
    """

    polyhedron: HPolyhedron
    row_labels: tuple[str, ...]
    sense: str


def build_dual(problem: "LinearCausalProblem", sense: str) -> DualProgram:
    if sense not in (LOWER, UPPER):
        raise ValueError(f"sense must be {LOWER!r} or {UPPER!r}")
    kept = problem.kept_rows
    labels = tuple(problem.row_label(i) for i in kept)
    if not kept or labels[0] != "1":
        raise GeometryError("normalization row missing from the kept row set")
    objective = problem.objective if sense == LOWER else tuple(-c for c in problem.objective)
    # constraints: one per q variable, sum_i R[kept i][q] * y_i <= c_q
    A = tuple(
        tuple(Fraction(problem.matrix[i][qi]) for i in kept)
        for qi in range(len(problem.q_names))
    )
    poly = HPolyhedron(A=A, b=tuple(Fraction(c) for c in objective), dim=len(kept))
    return DualProgram(polyhedron=poly, row_labels=labels, sense=sense)


def evaluate_dual_vertex(dual: DualProgram, vertex: tuple[Fraction, ...]) -> LinearExpression:
    """Symbolic affine expression b(p)^T y at one dual vertex.

    Dropped (dependent) primal rows contribute coefficient zero by
    construction; for the upper sense the negated objective is undone here so
    the returned expression is the bound itself.
    """
    sign = 1 if dual.sense == LOWER else -1
    constant = Fraction(0)
    coeffs: dict[str, Fraction] = {}
    for label, value in zip(dual.row_labels, vertex):
        if label == "1":
            constant += sign * value
        elif value:
            coeffs[label] = coeffs.get(label, Fraction(0)) + sign * value
    return make_expression(constant, coeffs)
