"""Desk-scale aggregation closures of covering instances.

The k-aggregation closure intersects the integer hulls of every k-row
relaxation obtained by aggregating the instance's rows with nonnegative
multipliers.  No finite enumeration of all multiplier tuples exists, so
this module samples them on an exact rational grid: every multiplier row
with nonnegative integer coordinates of total at most the density D,
reduced to primitive form (equivalently, every rational direction of
denominator at most D).  The result is always an outer approximation of
the true closure that contains the instance's integer hull; doubling the
density and observing no change is reported as ``stabilized``, which is
evidence of exactness but not a proof, and single-row instances are exact
at any density because every aggregation rescales the one row.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ContractViolation
from . import linalg
from .linalg import Vector, primitive
from .covering import CoveringInstance, integer_hull
from .polyhedron import (
    HPolyhedron,
    Inequality,
    check_implication,
    fourier_motzkin_project,
    is_facet_defining,
    remove_redundant,
    same_point_set,
    sorted_unique,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

SIGN = "SIGN"
HULL_FACET = "HULL_FACET"
UNATTRIBUTED = "UNATTRIBUTED"


@dataclass(frozen=True)
class AggregationSample:
    """A tuple of multiplier rows, each a nonnegative vector over the
    instance's rows in canonical primitive form; at least one row must be
    nonzero.  Zero rows are legal and aggregate to the trivial 0 >= 0."""

    multipliers: tuple[Vector, ...]

    def __post_init__(self):
        rows = tuple(primitive(linalg.vector(r)) for r in self.multipliers)
        if not rows:
            raise ContractViolation("a sample needs at least one multiplier row")
        width = len(rows[0])
        for r in rows:
            linalg.check_dim(r, width, "multiplier row")
            if any(a < 0 for a in r):
                raise ContractViolation(f"multipliers must be nonnegative, got {r}")
        if all(linalg.is_zero(r) for r in rows):
            raise ContractViolation("at least one multiplier row must be nonzero")
        object.__setattr__(self, "multipliers", rows)

    @property
    def k(self) -> int:
        return len(self.multipliers)

    def describe(self) -> str:
        return "[" + "; ".join(linalg.format_vector(r) for r in self.multipliers) + "]"


@dataclass(frozen=True)
class AggregatedHull:
    """One sampled relaxation: the aggregated covering instance and the
    exact integer hull of its lattice points."""

    sample: AggregationSample
    polyhedron: CoveringInstance
    hull: HPolyhedron


@dataclass(frozen=True)
class ClosureApprox:
    """Intersection of the sampled aggregated hulls: an outer approximation
    of the aggregation closure that always contains the instance's integer
    hull.  ``stabilized`` records that doubling the density left the point
    set unchanged (necessary, not sufficient, for exactness)."""

    polyhedron: HPolyhedron
    hulls: tuple[AggregatedHull, ...]
    k: int
    density: int
    stabilized: bool

    @property
    def samples_used(self) -> tuple[AggregationSample, ...]:
        return tuple(h.sample for h in self.hulls)


@dataclass(frozen=True)
class CutClass:
    """classify_cuts entry: one closure facet with its attribution."""

    inequality: Inequality
    label: str
    sample: AggregationSample | None = None


@dataclass(frozen=True)
class ProjectionCheck:
    passed: bool
    projected_closure: HPolyhedron
    closure_of_projection: HPolyhedron
    projected_instance: CoveringInstance


def multiplier_rows(m: int, density: int) -> tuple[Vector, ...]:
    """All primitive nonnegative integer rows of length m with coordinate
    sum between 1 and density: the exact grid of multiplier directions of
    denominator at most density."""
    if m < 1 or density < 1:
        raise ContractViolation("m and density must be at least 1")
    rows: dict[Vector, None] = {}

    def build(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 0:
            if any(prefix):
                rows.setdefault(primitive(linalg.vector(prefix)), None)
            return
        for v in range(remaining + 1):
            build(prefix + [v], remaining - v, slots - 1)

    build([], density, m)
    return tuple(sorted(rows))


def sample_multipliers(m: int, k: int, density: int) -> tuple[AggregationSample, ...]:
    """All k-tuples of grid multiplier rows, deduplicated up to per-row
    scaling and reordering, with tuples whose row set is covered by
    another tuple's row set dropped (their aggregated hull is a superset,
    so they never tighten the intersection).  What remains is every
    size-min(k, #rows) subset of the grid rows; the unit rows are always
    present, so the original constraints always participate."""
    if k < 1:
        raise ContractViolation("k must be at least 1")
    rows = multiplier_rows(m, density)
    size = min(k, len(rows))
    return tuple(AggregationSample(combo) for combo in combinations(rows, size))


def aggregate(q: CoveringInstance, sample: AggregationSample) -> CoveringInstance:
    """The k-row covering instance with rows lambda^j M >= lambda^j d, each
    row reduced to canonical primitive form."""
    rows = []
    demand = []
    for lam in sample.multipliers:
        linalg.check_dim(lam, q.m, "multiplier row")
        row = linalg.vec_mat(lam, q.M)
        rhs = linalg.dot(lam, q.d)
        stacked = primitive(row + (rhs,))
        rows.append(stacked[:-1])
        demand.append(stacked[-1])
    return CoveringInstance(tuple(rows), tuple(demand))


def _thread_count() -> int:
    raw = os.environ.get("CLOSURELAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _hulls_for(q: CoveringInstance, samples: Sequence[AggregationSample]) -> list[AggregatedHull]:
    def one(sample: AggregationSample) -> AggregatedHull:
        agg = aggregate(q, sample)
        return AggregatedHull(sample, agg, integer_hull(agg))

    threads = _thread_count()
    if threads > 1 and len(samples) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, samples))  # map preserves sample order
    return [one(s) for s in samples]


def _intersect(n: int, hulls: Iterable[AggregatedHull]) -> HPolyhedron:
    pool = []
    for h in hulls:
        pool.extend(h.hull.inequalities)
    return remove_redundant(HPolyhedron(n, sorted_unique(pool)))


def closure_approx(q: CoveringInstance, k: int, density: int) -> ClosureApprox:
    """Intersection of the aggregated integer hulls over the density grid,
    redundancy-eliminated, with the density-doubling stabilization check."""
    if k < 1 or density < 1:
        raise ContractViolation("k and density must be at least 1")
    hulls = _hulls_for(q, sample_multipliers(q.m, k, density))
    poly = _intersect(q.n, hulls)
    doubled = _intersect(q.n, _hulls_for(q, sample_multipliers(q.m, k, 2 * density)))
    return ClosureApprox(
        polyhedron=poly, hulls=tuple(hulls), k=k, density=density,
        stabilized=same_point_set(poly, doubled))


def _is_sign_constraint(q: Inequality) -> bool:
    v = q.canonical_stacked()
    return v[-1] == 0 and sum(1 for a in v[:-1] if a != 0) == 1 and min(v[:-1]) == -1


def classify_cuts(ca: ClosureApprox) -> tuple[CutClass, ...]:
    """Label each closure facet: SIGN for a nonnegativity bound, HULL_FACET
    with the first sampled hull it is facet-defining for, UNATTRIBUTED
    otherwise (in practice a symptom of too sparse a sample)."""
    out = []
    for facet in ca.polyhedron.inequalities:
        if _is_sign_constraint(facet):
            out.append(CutClass(facet, SIGN))
            continue
        attributed = None
        for h in ca.hulls:
            if not check_implication(h.hull.inequalities, facet).implied:
                continue
            if is_facet_defining(h.hull, facet):
                attributed = h.sample
                break
        if attributed is not None:
            out.append(CutClass(facet, HULL_FACET, sample=attributed))
        else:
            out.append(CutClass(facet, UNATTRIBUTED))
    return tuple(out)


def project_instance(q: CoveringInstance, t: int) -> CoveringInstance:
    """The orthogonal projection of a covering instance onto its first t
    coordinates.  A row supported inside the first t coordinates survives
    with its demand; any other row is absorbed by sending the dropped
    coordinates to infinity and becomes trivial."""
    if not 1 <= t < q.n:
        raise ContractViolation(f"t must satisfy 1 <= t < {q.n}, got {t}")
    rows = []
    demand = []
    for row, di in zip(q.M, q.d):
        if all(row[j] == 0 for j in range(t, q.n)):
            rows.append(row[:t])
            demand.append(di)
        else:
            rows.append(linalg.zeros(t))
            demand.append(_ZERO)
    return CoveringInstance(tuple(rows), tuple(demand))


def check_projection_lemma(q: CoveringInstance, t: int, k: int) -> ProjectionCheck:
    """For single-row instances, where the sampled closure is exactly the
    integer hull, verify that projecting the closure equals the closure of
    the projected instance.  Multi-row instances are refused: both sides
    would be sampled approximations and the equality is only guaranteed
    for the exact closures."""
    if q.m != 1:
        raise ContractViolation(
            "projection commutation is only checked for single-row instances; "
            f"got {q.m} rows, where the sampled closure may be inexact")
    closure = closure_approx(q, k, 1).polyhedron
    lhs = fourier_motzkin_project(closure, range(t))
    projected = project_instance(q, t)
    rhs = closure_approx(projected, k, 1).polyhedron
    return ProjectionCheck(
        passed=same_point_set(lhs, rhs),
        projected_closure=lhs,
        closure_of_projection=rhs,
        projected_instance=projected)
