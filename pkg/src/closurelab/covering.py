"""Covering polyhedra {x >= 0 : Mx >= d} with nonnegative data, their
minimal integer points, and their integer hulls.

The feasible integer points form an upward-closed subset of N^n, so the
finitely many minimal ones generate everything by domination and
conv(minimal points) + R^n_+ is exactly the integer hull.  Minimal points
are found by exact enumeration over the box 0 <= x_j <= B_j with
B_j = max over rows i with M_ij > 0 of ceil(d_i / M_ij): any feasible
point with x_j > B_j stays feasible after decrementing x_j, so no minimal
point escapes the box, and the box is downward closed, so no box point is
dominated from outside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Iterable, Sequence

from .errors import ContractViolation
from . import linalg
from .linalg import Matrix, Vector, primitive
from .polyhedron import HPolyhedron, Inequality, VPolyhedron, v_to_h

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class CoveringInstance:
    """{x in R^n_+ : Mx >= d} with M >= 0 and d >= 0 entrywise.

    Such a set is never empty (sufficiently large points are feasible),
    which the constructor enforces: a row with positive demand must have
    a positive coefficient somewhere.
    """

    M: Matrix
    d: Vector

    def __post_init__(self):
        m_rows = linalg.matrix(self.M)
        demand = linalg.vector(self.d)
        if not m_rows:
            raise ContractViolation("a covering instance needs at least one row")
        if not m_rows[0]:
            raise ContractViolation("a covering instance needs at least one variable")
        linalg.check_dim(demand, len(m_rows), "demand vector")
        for i, row in enumerate(m_rows):
            for j, entry in enumerate(row):
                if entry < 0:
                    raise ContractViolation(
                        f"covering data must be nonnegative: M[{i + 1}][{j + 1}] = {entry}")
            if demand[i] < 0:
                raise ContractViolation(
                    f"covering data must be nonnegative: d[{i + 1}] = {demand[i]}")
            if demand[i] > 0 and all(entry == 0 for entry in row):
                raise ContractViolation(
                    f"row {i + 1} demands {demand[i]} with all-zero coefficients; "
                    "the instance would be empty")
        object.__setattr__(self, "M", m_rows)
        object.__setattr__(self, "d", demand)

    @property
    def n(self) -> int:
        return len(self.M[0])

    @property
    def m(self) -> int:
        return len(self.M)

    def to_hpolyhedron(self) -> HPolyhedron:
        """The linear relaxation as half-spaces: -M_i.x <= -d_i, -x_j <= 0."""
        out = [Inequality(linalg.neg(row), -di) for row, di in zip(self.M, self.d)
               if not linalg.is_zero(row)]
        out.extend(Inequality(linalg.neg(linalg.unit(self.n, j)), _ZERO)
                   for j in range(self.n))
        return HPolyhedron(self.n, tuple(out))


@dataclass(frozen=True)
class MinimalPointSet:
    """An antichain of feasible integer points that dominates every
    feasible integer point; lexicographically sorted."""

    points: tuple[Vector, ...]

    def __post_init__(self):
        pts = tuple(sorted(linalg.vector(p) for p in self.points))
        for p in pts:
            if any(a.denominator != 1 or a < 0 for a in p):
                raise ContractViolation(f"minimal points live in N^n, got {p}")
        for i, p in enumerate(pts):
            for q in pts[i + 1:]:
                if dominates(p, q) or dominates(q, p):
                    raise ContractViolation(
                        f"not an antichain: {p} and {q} are comparable")
        object.__setattr__(self, "points", pts)


def dominates(low, high) -> bool:
    """low <= high componentwise."""
    return all(a <= b for a, b in zip(low, high))


def enumeration_box(q: CoveringInstance) -> tuple[int, ...]:
    """The exact per-coordinate bounds B_j; every minimal integer point
    satisfies x_j <= B_j."""
    bounds = []
    for j in range(q.n):
        best = 0
        for i in range(q.m):
            if q.M[i][j] > 0:
                best = max(best, ceil(q.d[i] / q.M[i][j]))
        bounds.append(best)
    return tuple(bounds)


def _integer_rows(q: CoveringInstance) -> list[tuple[tuple[int, ...], int]]:
    # Positive rescaling of each row keeps the feasible set; integer rows
    # let the box scan run in plain int arithmetic.
    rows = []
    for row, di in zip(q.M, q.d):
        stacked = primitive(row + (di,))
        rows.append((tuple(int(a) for a in stacked[:-1]), int(stacked[-1])))
    return rows


def minimal_integer_points(q: CoveringInstance) -> MinimalPointSet:
    """Exactly the minimal elements of {x in N^n : Mx >= d}."""
    rows = _integer_rows(q)
    box = enumeration_box(q)
    kept: list[tuple[int, ...]] = []
    # Lexicographic scan: any dominating point precedes what it dominates,
    # so checking against the running antichain is exact.
    for point in product(*(range(b + 1) for b in box)):
        if any(sum(c * x for c, x in zip(row, point)) < rhs for row, rhs in rows):
            continue
        if any(dominates(p, point) for p in kept):
            continue
        kept.append(point)
    return MinimalPointSet(tuple(linalg.vector(p) for p in kept))


def minimal_elements(points: Iterable[Sequence]) -> MinimalPointSet:
    """The subset of the given points that is an antichain dominating all
    of them."""
    pts = sorted(set(tuple(linalg.vector(p)) for p in points))
    kept: list[Vector] = []
    for p in pts:
        if not any(dominates(k, p) for k in kept):
            kept.append(p)
    return MinimalPointSet(tuple(kept))


def integer_hull(q: CoveringInstance) -> HPolyhedron:
    """Irredundant H-representation of conv({x in N^n : Mx >= d}), which
    equals conv(minimal points) + R^n_+ and is again of covering form."""
    minimal = minimal_integer_points(q)
    rays = tuple(linalg.unit(q.n, j) for j in range(q.n))
    return v_to_h(VPolyhedron(q.n, minimal.points, rays))


def down_set_contains(e1: Iterable[Sequence], e2: Iterable[Sequence]) -> bool:
    """Is {x : x <= some point of e1} contained in {x : x <= some point of
    e2}?  For finitely generated down-sets this is exactly generator
    domination."""
    e2_pts = [tuple(linalg.vector(p)) for p in e2]
    return all(
        any(dominates(p1, p2) for p2 in e2_pts)
        for p1 in (tuple(linalg.vector(p)) for p in e1)
    )
