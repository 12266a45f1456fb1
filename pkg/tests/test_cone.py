"""Generated cones: extreme rays, pointedness, closure, validity, FII."""

from fractions import Fraction as F

import pytest

from closurelab import linalg
from closurelab.cone import (
    GeneratedCone,
    check_theorem1,
    closure_of,
    extreme_rays,
    fii_check,
    is_fii,
    is_pointed,
    is_valid_for_closure,
)
from closurelab.errors import (
    ContractViolation,
    EmptyClosureError,
    InvalidInequalityError,
    NotFullDimensionalError,
    NotPointedError,
)
from closurelab.lp import cone_membership
from closurelab.polyhedron import dimension, ineq, is_facet_defining, same_point_set
from closurelab.verify import random_line_cones, random_pointed_cones

V = linalg.vector

ORTHANT_CONE = GeneratedCone((V([-1, 0, 0]), V([0, -1, 0]), V([0, 0, 1])))
SQUARE_CONE = GeneratedCone((V([1, 0, 1]), V([0, 1, 1]),
                             V([-1, 0, 0]), V([0, -1, 0]), V([0, 0, 1])))


def test_generators_are_canonicalized():
    k = GeneratedCone((V([2, 4]), V([0, 3])))
    assert k.generators == (V([1, 2]), V([0, 1]))


def test_zero_generator_rejected():
    with pytest.raises(ContractViolation):
        GeneratedCone((V([0, 0]),))


def test_extreme_rays_drops_sum():
    rays = extreme_rays(GeneratedCone((V([1, 0]), V([0, 1]), V([1, 1]))))
    assert rays.rays == (V([0, 1]), V([1, 0]))


def test_extreme_rays_identity_case():
    rays = extreme_rays(GeneratedCone((V([1, 0]), V([0, 1]))))
    assert rays.rays == (V([0, 1]), V([1, 0]))


def test_extreme_rays_interior_generator():
    k = GeneratedCone((V([2, 1]), V([1, 2]), V([1, 1])))
    assert extreme_rays(k).rays == (V([1, 2]), V([2, 1]))
    # (1,1) really is 1/3 (2,1) + 1/3 (1,2)
    member = cone_membership((V([2, 1]), V([1, 2])), V([1, 1]))
    assert member.member and member.multipliers == (F(1, 3), F(1, 3))


def test_extreme_rays_requires_pointed():
    with pytest.raises(NotPointedError) as err:
        extreme_rays(GeneratedCone((V([1, 0]), V([-1, 0]), V([0, 1]))))
    v = err.value.line_witness
    assert cone_membership((V([1, 0]), V([-1, 0]), V([0, 1])), linalg.neg(v)).member


def test_is_pointed_with_support():
    res = is_pointed(GeneratedCone((V([1, 0]), V([1, 1]))))
    assert res.pointed
    assert all(linalg.dot(res.support, g) > 0 for g in (V([1, 0]), V([1, 1])))


def test_is_pointed_detects_opposite_pair():
    res = is_pointed(GeneratedCone((V([1, 0]), V([-1, 0]), V([0, 1]))))
    assert not res.pointed
    assert res.line_witness == V([1, 0])


def test_is_pointed_detects_hidden_line():
    # (1,-1) and (-1,1) sum to zero, so the cone is the half-plane u+v >= 0
    gens = (V([1, 1]), V([1, -1]), V([-1, 1]))
    res = is_pointed(GeneratedCone(gens))
    assert not res.pointed
    v = res.line_witness
    assert cone_membership(gens, v).member and cone_membership(gens, linalg.neg(v)).member


def test_closure_orthant():
    closure = closure_of(ORTHANT_CONE)
    assert set(closure.inequalities) == {ineq([-1, 0], 0), ineq([0, -1], 0)}


def test_closure_slab():
    closure = closure_of(GeneratedCone((V([1, 0, 1]), V([-1, 0, 0]), V([0, 0, 1]))))
    assert set(closure.inequalities) == {ineq([1, 0], 1), ineq([-1, 0], 0)}


def test_closure_direct_reading():
    closure = closure_of(GeneratedCone((V([1, 1, 2]), V([1, 2, 3]), V([0, 0, 1]))))
    assert set(closure.inequalities) == {ineq([1, 1], 2), ineq([1, 2], 3)}


def test_closure_adds_unit_last_silently():
    k = GeneratedCone((V([1, 1, 2]),))
    assert not k.has_unit_last
    closure = closure_of(k)
    assert set(closure.inequalities) == {ineq([1, 1], 2)}


def test_closure_can_be_empty():
    closure = closure_of(GeneratedCone((V([0, 0, -1]), V([0, 0, 1]))))
    assert closure.is_empty


def test_validity_over_orthant():
    assert is_valid_for_closure(ORTHANT_CONE, ineq([-1, -1], 5)).valid
    res = is_valid_for_closure(ORTHANT_CONE, ineq([1, 0], 1))
    assert not res.valid
    assert res.witness == V([2, 0])


def test_validity_multipliers_sum_generators():
    k = GeneratedCone((V([1, 1, 2]), V([1, 2, 3]), V([0, 0, 1])))
    res = is_valid_for_closure(k, ineq([2, 3], 5))
    assert res.valid and res.multipliers == (F(1), F(1), F(0))


def test_validity_requires_nonempty_closure():
    with pytest.raises(EmptyClosureError):
        is_valid_for_closure(GeneratedCone((V([0, 0, -1]),)), ineq([1, 0], 1))


def test_theorem1_orthant():
    assert check_theorem1(ORTHANT_CONE).passed


def test_theorem1_redundant_generator_excluded():
    k = GeneratedCone(ORTHANT_CONE.generators + (V([-1, -1, 0]),))
    rep = check_theorem1(k)
    assert rep.passed
    assert V([-1, -1, 0]) not in rep.extreme_rays


def test_theorem1_requires_full_dimensional_closure():
    flat = GeneratedCone((V([1, 0, 0]), V([-1, 0, 0]), V([0, 0, 1])))
    with pytest.raises(NotFullDimensionalError):
        check_theorem1(flat)


def test_theorem1_random_cones():
    for cone in random_pointed_cones(17, count=12):
        rep = check_theorem1(cone)
        assert rep.passed
        assert rep.rays_are_generators


def test_pointedness_matches_full_dimension_random():
    for cone in random_pointed_cones(23, count=10):
        assert is_pointed(cone).pointed == (dimension(closure_of(cone)) == cone.n)
    for cone in random_line_cones(23, count=8):
        assert not is_pointed(cone).pointed
        assert dimension(closure_of(cone)) < cone.n


def test_fii_square_facet():
    assert is_fii(SQUARE_CONE, ineq([1, 0], 1))


def test_fii_square_corner_cut_is_redundant():
    res = fii_check(SQUARE_CONE, ineq([1, 1], 2))
    assert not res.is_fii
    combo = linalg.zeros(3)
    for mu, g in zip(res.multipliers, res.others):
        combo = linalg.add(combo, linalg.scale(mu, g))
    assert combo == V([1, 1, 2])


def test_fii_example_one_standin():
    k = GeneratedCone((V([-1, 2, 7]), V([1, 2, 7]), V([0, 0, 1])))
    res = fii_check(k, ineq([0, 1], F(7, 2)))
    assert not res.is_fii
    assert res.multipliers == (F(1, 4), F(1, 4), F(0))


def test_fii_rejects_invalid_inequality():
    with pytest.raises(InvalidInequalityError):
        fii_check(ORTHANT_CONE, ineq([1, 0], 1))


def test_fii_requires_full_dimensional_closure():
    flat = GeneratedCone((V([1, 0, 0]), V([-1, 0, 0]), V([0, 0, 1])))
    with pytest.raises(NotFullDimensionalError):
        fii_check(flat, ineq([1, 0], 0))


def test_fii_matches_facet_defining_on_generators():
    for cone in random_pointed_cones(29, count=10):
        closure = closure_of(cone)
        for g in cone.unique_generators():
            normal, rhs = g[:-1], g[-1]
            if linalg.is_zero(normal):
                continue
            q = ineq(normal, rhs)
            assert is_fii(cone, q) == is_facet_defining(closure, q)


def test_extreme_ray_soundness_random():
    for cone in random_pointed_cones(37, count=8):
        rays = extreme_rays(cone)
        gens = cone.unique_generators()
        for g in gens:
            others = tuple(x for x in gens if x != g)
            member = cone_membership(others, g).member
            assert member == (g not in rays.rays)


def test_rebuilt_closure_equals_original_random():
    for cone in random_pointed_cones(43, count=8):
        rays = extreme_rays(cone)
        rebuilt = GeneratedCone(rays.rays + (cone.unit_last(),))
        assert same_point_set(closure_of(cone), closure_of(rebuilt))


def test_extreme_rays_order_independent():
    for cone in random_pointed_cones(51, count=6):
        reference = extreme_rays(cone).rays
        shuffled = GeneratedCone(tuple(reversed(cone.generators)))
        assert extreme_rays(shuffled).rays == reference


def test_scaled_duplicate_generators_collapse():
    k = GeneratedCone((V([1, 0]), V([3, 0]), V([0, 2]), V([0, 1])))
    assert k.unique_generators() == (V([1, 0]), V([0, 1]))
    assert extreme_rays(k).rays == (V([0, 1]), V([1, 0]))
