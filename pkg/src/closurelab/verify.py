"""Seeded randomized verification suites for every module's invariants.

Each suite generates instances from a deterministic seed, checks the
module's exact invariants, and reports counts plus a counterexample dump
for any failure.  Counterexamples are greedily shrunk (drop a generator
or a row while the failure persists) and printed in instance-file form so
they can be re-run directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from . import linalg
from .linalg import Vector
from .lp import LpStatus, solve_lp
from .polyhedron import (
    check_implication,
    dimension,
    h_to_v,
    same_point_set,
)
from .cone import GeneratedCone, check_theorem1, closure_of, is_pointed
from .covering import (
    CoveringInstance,
    dominates,
    enumeration_box,
    integer_hull,
    minimal_integer_points,
)
from .aggregation import (
    UNATTRIBUTED,
    classify_cuts,
    closure_approx,
)
from .io import format_cone, format_covering

_ZERO = Fraction(0)
_ONE = Fraction(1)

SUITES = ("farkas", "cone", "covering", "aggregation", "all")


@dataclass
class SuiteReport:
    name: str
    seed: int
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, dump: Callable[[], str]) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(dump())


def _shrink_generators(gens: tuple[Vector, ...], fails: Callable[[tuple[Vector, ...]], bool]):
    """Greedy removal: drop generators one at a time while the predicate
    still fails.  Exact minimality is not attempted."""
    current = list(gens)
    changed = True
    while changed and len(current) > 1:
        changed = False
        for i in range(len(current)):
            candidate = tuple(current[:i] + current[i + 1:])
            try:
                if fails(candidate):
                    current = list(candidate)
                    changed = True
                    break
            except Exception:
                continue
    return tuple(current)


# ---------------------------------------------------------------------------
# farkas suite


def random_lp(rng: random.Random):
    n = rng.randint(1, 6)
    m = rng.randint(1, 6)
    a = tuple(tuple(Fraction(rng.randint(-5, 5)) for _ in range(n)) for _ in range(m))
    b = tuple(Fraction(rng.randint(-5, 5)) for _ in range(m))
    c = tuple(Fraction(rng.randint(-5, 5)) for _ in range(n))
    return a, b, c


def dual_of_max(a, b, c):
    """Dual of max c.x s.t. a.x <= b (x free): min b.y, aT y = c, y >= 0."""
    m, n = len(a), len(c)
    at = linalg.transpose(a) if a else tuple(() for _ in range(n))
    rows = []
    rhs = []
    for j in range(n):
        rows.append(at[j])
        rhs.append(c[j])
        rows.append(linalg.neg(at[j]))
        rhs.append(-c[j])
    for i in range(m):
        rows.append(linalg.neg(linalg.unit(m, i)))
        rhs.append(_ZERO)
    return tuple(rows), tuple(rhs), b


def suite_farkas(seed: int, count: int = 200) -> SuiteReport:
    """Random LPs: every certificate verifies by exact substitution and
    every optimum matches a dual optimum exactly."""
    rng = random.Random(seed)
    report = SuiteReport("farkas", seed)
    for idx in range(count):
        a, b, c = random_lp(rng)
        res = solve_lp(a, b, c, "max")

        def dump(reason):
            return (f"instance {idx}: {reason}\nA = {a}\nb = {b}\nc = {c}")

        if res.status is LpStatus.OPTIMAL:
            primal_ok = all(linalg.dot(row, res.x) <= bi for row, bi in zip(a, b))
            report.check(primal_ok, lambda: dump("optimal point infeasible"))
            da, db, dc = dual_of_max(a, b, c)
            dual = solve_lp(da, db, dc, "min")
            report.check(
                dual.status is LpStatus.OPTIMAL and dual.objective == res.objective,
                lambda: dump(f"dual mismatch: primal {res.objective}, dual "
                             f"{dual.status} {dual.objective}"))
        elif res.status is LpStatus.INFEASIBLE:
            y = res.certificate
            ok = (all(q >= 0 for q in y)
                  and linalg.is_zero(linalg.vec_mat(y, a))
                  and linalg.dot(y, b) < 0)
            report.check(ok, lambda: dump(f"bad Farkas certificate {y}"))
        else:
            r = res.certificate
            ok = (linalg.dot(c, r) > 0
                  and all(linalg.dot(row, r) <= 0 for row in a))
            report.check(ok, lambda: dump(f"bad improving ray {r}"))
            da, db, dc = dual_of_max(a, b, c)
            dual = solve_lp(da, db, dc, "min")
            report.check(dual.status is LpStatus.INFEASIBLE,
                         lambda: dump("primal unbounded but dual not infeasible"))
    return report


# ---------------------------------------------------------------------------
# cone suite


def random_pointed_cones(seed: int, count: int = 50, max_attempts: int = 10000):
    """Seeded generators: cones in Q^3 / Q^4 containing (0, ..., 0, 1) with
    nonnegative last coordinates (so the closure contains the origin) and a
    full-dimensional closure."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        n = rng.choice((2, 3))
        gens = [linalg.zeros(n) + (_ONE,)]
        for _ in range(rng.randint(2, 5)):
            alpha = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
            if linalg.is_zero(alpha):
                continue
            gens.append(alpha + (Fraction(rng.randint(0, 3)),))
        if len(gens) < 2:
            continue
        cone = GeneratedCone(tuple(gens))
        if dimension(closure_of(cone)) == n:
            out.append(cone)
    return out


def random_line_cones(seed: int, count: int = 20):
    """Cones built to contain a line: a pointed sample plus an opposite
    pair (v, 0), (-v, 0); the closure still contains the origin."""
    rng = random.Random(seed)
    base = random_pointed_cones(seed + 1, count)
    out = []
    for cone in base:
        n = cone.n
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
        while linalg.is_zero(v):
            v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
        pair = (v + (_ZERO,), linalg.neg(v) + (_ZERO,))
        out.append(GeneratedCone(cone.generators + pair))
    return out


def suite_cone(seed: int, count: int = 50, line_count: int = 20) -> SuiteReport:
    """Extreme-ray reconstruction, generator provenance of every extreme
    ray, and the pointedness/full-dimension equivalence."""
    report = SuiteReport("cone", seed)
    for cone in random_pointed_cones(seed, count):
        rep = check_theorem1(cone)

        def dump(reason):
            def fails(gens):
                try:
                    return not check_theorem1(GeneratedCone(gens)).passed
                except Exception:
                    return False
            shrunk = _shrink_generators(cone.generators, fails)
            return f"{reason}\n{format_cone(GeneratedCone(shrunk))}"

        report.check(rep.passed, lambda: dump(f"theorem-1 cross-check failed: {rep.detail}"))
        report.check(rep.rays_are_generators,
                     lambda: dump("an extreme ray is not a generator up to scaling"))
        full = dimension(closure_of(cone)) == cone.n
        pointed = is_pointed(cone).pointed
        report.check(pointed == full,
                     lambda: dump(f"pointed={pointed} but full-dimensional={full}"))
    for cone in random_line_cones(seed, line_count):
        full = dimension(closure_of(cone)) == cone.n
        pointed = is_pointed(cone).pointed
        report.check(
            (not pointed) and pointed == full,
            lambda: (f"line-containing cone: pointed={pointed}, "
                     f"full-dimensional={full}\n{format_cone(cone)}"))
    return report


# ---------------------------------------------------------------------------
# covering suite


def random_covering(rng: random.Random, max_n: int = 3, max_m: int = 3,
                    max_entry: int = 5) -> CoveringInstance:
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    rows = []
    demand = []
    for _ in range(m):
        row = [Fraction(rng.randint(0, max_entry)) for _ in range(n)]
        d = Fraction(rng.randint(0, max_entry))
        if d > 0 and all(a == 0 for a in row):
            row[rng.randrange(n)] = Fraction(rng.randint(1, max_entry))
        rows.append(tuple(row))
        demand.append(d)
    return CoveringInstance(tuple(rows), tuple(demand))


def brute_force_minimal_points(q: CoveringInstance, slack: int = 0):
    """Independent oracle: enumerate the (optionally enlarged) box, filter
    feasibility in exact arithmetic, and keep the points no other feasible
    point dominates (quadratic scan)."""
    box = tuple(b + slack for b in enumeration_box(q))
    feasible = []
    for point in product(*(range(b + 1) for b in box)):
        x = linalg.vector(point)
        if all(linalg.dot(row, x) >= di for row, di in zip(q.M, q.d)):
            feasible.append(x)
    return tuple(sorted(
        x for x in feasible
        if not any(y != x and dominates(y, x) for y in feasible)
    ))


def suite_covering(seed: int, count: int = 100) -> SuiteReport:
    """Minimal points against the quadratic oracle, antichain and dominance
    completeness, box-bound soundness, and the covering form of the hull."""
    rng = random.Random(seed)
    report = SuiteReport("covering", seed)
    for idx in range(count):
        q = random_covering(rng)

        def dump(reason):
            return f"instance {idx}: {reason}\n{format_covering(q)}"

        minimal = minimal_integer_points(q)
        oracle = brute_force_minimal_points(q)
        report.check(minimal.points == oracle,
                     lambda: dump(f"minimal points {minimal.points} != oracle {oracle}"))
        enlarged = brute_force_minimal_points(q, slack=2)
        report.check(minimal.points == enlarged,
                     lambda: dump("minimal points change when the box grows"))
        pairwise_ok = not any(
            a != b and dominates(a, b)
            for a in minimal.points for b in minimal.points)
        report.check(pairwise_ok, lambda: dump("minimal points are not an antichain"))

        box = enumeration_box(q)
        complete = all(
            any(dominates(p, linalg.vector(point)) for p in minimal.points)
            for point in product(*(range(b + 1) for b in box))
            if all(linalg.dot(row, linalg.vector(point)) >= di
                   for row, di in zip(q.M, q.d)))
        report.check(complete, lambda: dump("a feasible box point dominates no minimal point"))

        hull = integer_hull(q)
        signs_ok = True
        for facet in hull.inequalities:
            ge_normal = linalg.neg(facet.normal)
            if any(a < 0 for a in ge_normal) or -facet.rhs < 0:
                signs_ok = False
        report.check(signs_ok, lambda: dump("a hull facet leaves covering form"))
        rays = h_to_v(hull).rays
        units = tuple(sorted(linalg.unit(q.n, j) for j in range(q.n)))
        report.check(rays == units, lambda: dump(f"hull rays {rays} != unit vectors"))

        relax = q.to_hpolyhedron()
        inside = all(check_implication(hull.inequalities, t).implied
                     for t in relax.inequalities)
        report.check(inside, lambda: dump("integer hull escapes the relaxation"))
        pts_ok = all(hull.contains(p) for p in minimal.points)
        report.check(pts_ok, lambda: dump("a minimal point misses the hull"))
    return report


# ---------------------------------------------------------------------------
# aggregation suite


def random_single_row(rng: random.Random, n: int | None = None) -> CoveringInstance:
    n = n or rng.randint(1, 3)
    row = [Fraction(rng.randint(0, 5)) for _ in range(n)]
    if all(a == 0 for a in row):
        row[rng.randrange(n)] = Fraction(rng.randint(1, 5))
    return CoveringInstance((tuple(row),), (Fraction(rng.randint(1, 5)),))


def random_two_row(rng: random.Random, n: int = 2, max_entry: int = 4) -> CoveringInstance:
    rows = []
    demand = []
    for _ in range(2):
        row = [Fraction(rng.randint(0, max_entry)) for _ in range(n)]
        if all(a == 0 for a in row):
            row[rng.randrange(n)] = Fraction(rng.randint(1, max_entry))
        rows.append(tuple(row))
        demand.append(Fraction(rng.randint(1, max_entry)))
    return CoveringInstance(tuple(rows), tuple(demand))


def suite_aggregation(seed: int, single_count: int = 10, pair_count: int = 5) -> SuiteReport:
    """Single-row exactness, density and k monotonicity, the hull sandwich,
    and facet attribution on stabilized runs."""
    rng = random.Random(seed)
    report = SuiteReport("aggregation", seed)
    for idx in range(single_count):
        q = random_single_row(rng)

        def dump(reason):
            return f"single-row {idx}: {reason}\n{format_covering(q)}"

        hull = integer_hull(q)
        for k, density in ((1, 1), (2, 4)):
            ca = closure_approx(q, k, density)
            report.check(
                ca.stabilized and same_point_set(ca.polyhedron, hull),
                lambda: dump(f"k={k} density={density} closure differs from hull"))

    for idx in range(pair_count):
        q = random_two_row(rng, max_entry=3)

        def dump(reason):
            return f"two-row {idx}: {reason}\n{format_covering(q)}"

        low = closure_approx(q, 1, 2)
        high = closure_approx(q, 1, 4)
        mono = all(check_implication(high.polyhedron.inequalities, t).implied
                   for t in low.polyhedron.inequalities)
        report.check(mono, lambda: dump("density doubling did not shrink the closure"))

        deeper = closure_approx(q, 2, 2)
        k_mono = all(check_implication(deeper.polyhedron.inequalities, t).implied
                     for t in low.polyhedron.inequalities)
        report.check(k_mono, lambda: dump("raising k did not shrink the closure"))

        hull = integer_hull(q)
        sandwich = all(check_implication(hull.inequalities, t).implied
                       for t in low.polyhedron.inequalities)
        for h in low.hulls:
            sandwich = sandwich and all(
                check_implication(low.polyhedron.inequalities, t).implied
                for t in h.hull.inequalities)
        report.check(sandwich, lambda: dump("closure leaves the hull sandwich"))

        if low.stabilized:
            labels = classify_cuts(low)
            report.check(all(c.label != UNATTRIBUTED for c in labels),
                         lambda: dump("stabilized run left an unattributed facet"))
    return report


def run_suite(name: str, seed: int) -> list[SuiteReport]:
    if name == "farkas":
        return [suite_farkas(seed)]
    if name == "cone":
        return [suite_cone(seed)]
    if name == "covering":
        return [suite_covering(seed)]
    if name == "aggregation":
        return [suite_aggregation(seed)]
    if name == "all":
        return [suite_farkas(seed), suite_cone(seed), suite_covering(seed),
                suite_aggregation(seed)]
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
