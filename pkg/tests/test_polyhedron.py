"""Polyhedron conversions, reductions, and queries."""

import random
from fractions import Fraction as F

import pytest

from closurelab import linalg
from closurelab.errors import (
    ContractViolation,
    InconsistentSystemError,
    InvalidInequalityError,
    NotFullDimensionalError,
    ParseError,
)
from closurelab.polyhedron import (
    HPolyhedron,
    Inequality,
    VPolyhedron,
    check_implication,
    dimension,
    format_ge,
    format_human,
    format_le,
    fourier_motzkin_project,
    ge,
    h_to_v,
    ineq,
    is_facet_defining,
    parse_inequality,
    parse_le_tokens,
    remove_redundant,
    same_point_set,
    sorted_unique,
    v_to_h,
)

from oracles import brute_force_vertices, point_has_extension, rational_grid

V = linalg.vector

SQUARE = HPolyhedron(2, (ineq([1, 0], 1), ineq([-1, 0], 0),
                         ineq([0, 1], 1), ineq([0, -1], 0)))
WEDGE = HPolyhedron(2, (ge([1, 1], 2), ge([1, 2], 3), ge([1, 0], 0), ge([0, 1], 0)))


def test_inequality_identity_up_to_positive_scaling():
    assert ineq([1, 2], 4) == ineq([F(1, 2), 1], 2)
    assert ineq([1, 2], 4) != ineq([-1, -2], -4)
    assert hash(ineq([2, 4], 8)) == hash(ineq([1, 2], 4))


def test_inequality_zero_normal_needs_nonnegative_rhs():
    ineq([0, 0], 1)
    ineq([0, 0], 0)
    with pytest.raises(ContractViolation):
        ineq([0, 0], -1)


def test_h_to_v_unit_square():
    vp = h_to_v(SQUARE)
    assert vp.vertices == (V([0, 0]), V([0, 1]), V([1, 0]), V([1, 1]))
    assert vp.rays == ()


def test_h_to_v_orthant():
    vp = h_to_v(HPolyhedron(2, (ineq([-1, 0], 0), ineq([0, -1], 0))))
    assert vp.vertices == (V([0, 0]),)
    assert vp.rays == (V([0, 1]), V([1, 0]))


def test_h_to_v_wedge_matches_brute_force():
    vp = h_to_v(WEDGE)
    oracle = brute_force_vertices(WEDGE)
    assert oracle == (V([0, 2]), V([1, 1]), V([3, 0]))
    assert vp.vertices == oracle
    assert vp.rays == (V([0, 1]), V([1, 0]))


def test_h_to_v_empty():
    empty = HPolyhedron(1, (ineq([1], -1), ineq([-1], 0)))
    vp = h_to_v(empty)
    assert vp.vertices == () and vp.rays == ()


def test_v_to_h_wedge():
    vp = VPolyhedron(2, (V([0, 2]), V([1, 1]), V([3, 0])), (V([1, 0]), V([0, 1])))
    hp = v_to_h(vp)
    assert set(hp.inequalities) == {ge([1, 1], 2), ge([1, 2], 3),
                                    ge([1, 0], 0), ge([0, 1], 0)}


def test_v_to_h_orthant_from_origin():
    hp = v_to_h(VPolyhedron(2, (V([0, 0]),), (V([1, 0]), V([0, 1]))))
    assert set(hp.inequalities) == {ge([1, 0], 0), ge([0, 1], 0)}


def test_v_to_h_segment_gives_equality_pair():
    hp = v_to_h(VPolyhedron(2, (V([0, 0]), V([1, 0])), ()))
    assert set(hp.inequalities) == {ineq([0, 1], 0), ineq([0, -1], 0),
                                    ineq([1, 0], 1), ineq([-1, 0], 0)}


def test_v_to_h_rejects_all_empty():
    with pytest.raises(ContractViolation):
        v_to_h(VPolyhedron(2, (), ()))


def test_whole_space_round_trip():
    space = HPolyhedron(2, ())
    vp = h_to_v(space)
    assert vp.vertices == (V([0, 0]),)
    assert set(vp.rays) == {V([1, 0]), V([-1, 0]), V([0, 1]), V([0, -1])}
    back = v_to_h(vp)
    assert back.inequalities == ()


def test_single_point_round_trip():
    vp = VPolyhedron(2, (V([F(1, 2), 3]),), ())
    hp = v_to_h(vp)
    assert dimension(hp) == 0
    assert h_to_v(hp).vertices == (V([F(1, 2), 3]),)


def test_round_trip_random_polyhedra():
    # negative right-hand sides let empty and flat cases through as well
    rng = random.Random(12)
    done = 0
    empties = 0
    while done < 16:
        n = rng.randint(1, 3)
        raw = [
            (V([rng.randint(-3, 3) for _ in range(n)]), F(rng.randint(-2, 5)))
            for _ in range(rng.randint(2, 6))]
        ineqs = tuple(Inequality(normal, rhs) for normal, rhs in raw
                      if not linalg.is_zero(normal))
        if not ineqs:
            continue
        p = HPolyhedron(n, ineqs)
        vp = h_to_v(p)
        if not vp.vertices:
            assert p.is_empty
            empties += 1
            done += 1
            continue
        back = v_to_h(vp)
        assert same_point_set(p, back)
        assert all(p.contains(v) for v in vp.vertices)
        done += 1
    assert empties > 0  # the sweep really exercised the empty branch


def test_remove_redundant_drops_sum():
    p = HPolyhedron(2, (ineq([1, 0], 1), ineq([0, 1], 1), ineq([1, 1], 3)))
    assert remove_redundant(p).inequalities == (ineq([1, 0], 1), ineq([0, 1], 1))


def test_remove_redundant_keeps_tighter_bound():
    p = HPolyhedron(1, (ineq([1], 1), ineq([1], 2)))
    assert remove_redundant(p).inequalities == (ineq([1], 1),)


def test_remove_redundant_example_one_standin():
    p = HPolyhedron(2, (ineq([-1, 2], 7), ineq([1, 2], 7), ineq([0, 1], F(7, 2))))
    out = remove_redundant(p)
    assert out.inequalities == (ineq([-1, 2], 7), ineq([1, 2], 7))
    # the dropped inequality is implied with multipliers (1/4, 1/4)
    imp = check_implication(out.inequalities, ineq([0, 1], F(7, 2)))
    assert imp.implied and imp.multipliers == (F(1, 4), F(1, 4)) and imp.slack == 0


def test_remove_redundant_flags_empty_input():
    empty = HPolyhedron(1, (ineq([1], -1), ineq([-1], 0)))
    out = remove_redundant(empty)
    assert out.is_empty and out.inequalities == empty.inequalities


def test_remove_redundant_preserves_point_set_random():
    rng = random.Random(21)
    for _ in range(10):
        n = rng.randint(1, 3)
        ineqs = tuple(
            Inequality(V([rng.randint(-3, 3) for _ in range(n)]),
                       F(rng.randint(0, 4)))
            for _ in range(rng.randint(2, 7)))
        ineqs = tuple(q for q in ineqs if not q.is_trivial())
        if not ineqs:
            continue
        p = HPolyhedron(n, ineqs)
        out = remove_redundant(p)
        if p.is_empty:
            continue
        assert same_point_set(p, out)
        # every kept inequality is non-redundant against the others
        for i, q in enumerate(out.inequalities):
            rest = out.inequalities[:i] + out.inequalities[i + 1:]
            if rest:
                assert not check_implication(rest, q).implied


def test_check_implication_half_sum():
    imp = check_implication((ineq([1, 2], 4), ineq([1, 0], 2)), ineq([1, 1], 3))
    assert imp.implied
    assert imp.multipliers == (F(1, 2), F(1, 2))
    assert imp.slack == 0


def test_check_implication_witness():
    imp = check_implication((ineq([1], 1),), ineq([1], 0))
    assert not imp.implied
    assert imp.witness is not None
    assert linalg.dot(V([1]), imp.witness) > 0
    assert linalg.dot(V([1]), imp.witness) <= 1


def test_check_implication_slack_only():
    imp = check_implication((ineq([-1, 0], 0), ineq([0, -1], 0)), ineq([-1, -1], 5))
    assert imp.implied and imp.slack == 5


def test_check_implication_unbounded_direction_witness():
    # x2 <= 0 fails over {x1 <= 0}: witness found along an improving ray
    imp = check_implication((ineq([1, 0], 0),), ineq([0, 1], 0))
    assert not imp.implied
    assert imp.witness[1] > 0 and imp.witness[0] <= 0


def test_check_implication_rejects_inconsistent_system():
    with pytest.raises(InconsistentSystemError) as err:
        check_implication((ineq([1], -1), ineq([-1], 0)), ineq([1], 5))
    assert err.value.certificate is not None


def test_dimension_examples():
    assert dimension(SQUARE) == 2
    assert dimension(HPolyhedron(2, (ineq([1, 0], 0), ineq([-1, 0], 0)))) == 1
    assert dimension(HPolyhedron(1, (ineq([1], -1), ineq([-1], 0)))) == -1
    assert dimension(HPolyhedron(3, ())) == 3


def test_facet_examples():
    assert is_facet_defining(SQUARE, ineq([1, 0], 1))
    assert not is_facet_defining(SQUARE, ineq([1, 1], 2))
    assert is_facet_defining(WEDGE, ge([1, 2], 3))


def test_facet_rejects_invalid_inequality():
    with pytest.raises(InvalidInequalityError) as err:
        is_facet_defining(SQUARE, ineq([1, 0], F(1, 2)))
    witness = err.value.witness
    assert SQUARE.contains(witness) and witness[0] > F(1, 2)


def test_facet_rejects_flat_polyhedron():
    flat = HPolyhedron(2, (ineq([1, 0], 0), ineq([-1, 0], 0)))
    with pytest.raises(NotFullDimensionalError):
        is_facet_defining(flat, ineq([1, 0], 0))


def test_facets_equal_irredundant_system_random():
    # for full-dimensional polyhedra the irredundant description is exactly
    # the facet list
    rng = random.Random(31)
    done = 0
    while done < 8:
        n = rng.randint(2, 4)
        ineqs = tuple(
            Inequality(V([rng.randint(-3, 3) for _ in range(n)]),
                       F(rng.randint(1, 5)))
            for _ in range(rng.randint(3, 8)))
        ineqs = tuple(q for q in ineqs if not q.is_trivial())
        if not ineqs:
            continue
        p = HPolyhedron(n, ineqs)
        if dimension(p) != n:
            continue
        reduced = remove_redundant(p)
        for q in reduced.inequalities:
            assert is_facet_defining(p, q)
        for q in p.inequalities:
            if q not in reduced.inequalities:
                assert not is_facet_defining(p, q)
        done += 1


def test_projection_eliminates_variable():
    p = HPolyhedron(2, (ineq([1, 1], 2), ineq([1, -1], 0)))
    out = fourier_motzkin_project(p, [0])
    assert out.inequalities == (ineq([1], 1),)


def test_projection_unbounded_direction():
    p = HPolyhedron(2, (ge([1, 1], 2), ge([1, 0], 0), ge([0, 1], 0)))
    out = fourier_motzkin_project(p, [0])
    assert out.inequalities == (ge([1], 0),)


def test_projection_identity():
    out = fourier_motzkin_project(SQUARE, [0, 1])
    assert same_point_set(out, SQUARE)


def test_projection_of_empty_is_empty():
    p = HPolyhedron(2, (ineq([0, 1], -1), ineq([0, -1], 0), ineq([1, 0], 5)))
    out = fourier_motzkin_project(p, [0])
    assert out.is_empty


def test_projection_matches_extension_oracle():
    rng = random.Random(41)
    for _ in range(6):
        ineqs = tuple(
            Inequality(V([rng.randint(-2, 2) for _ in range(3)]),
                       F(rng.randint(0, 4)))
            for _ in range(rng.randint(2, 5)))
        ineqs = tuple(q for q in ineqs if not q.is_trivial())
        if not ineqs:
            continue
        p = HPolyhedron(3, ineqs)
        keep = tuple(sorted(rng.sample(range(3), rng.randint(1, 2))))
        proj = fourier_motzkin_project(p, keep)
        for point in ((F(x), F(y)) for x in rational_grid(-2, 2)
                      for y in rational_grid(-2, 2)):
            partial = point[:len(keep)]
            assert proj.contains(partial) == point_has_extension(p, keep, partial)


def test_projection_composes():
    rng = random.Random(47)
    for _ in range(5):
        ineqs = tuple(
            Inequality(V([rng.randint(-2, 2) for _ in range(3)]),
                       F(rng.randint(0, 4)))
            for _ in range(rng.randint(3, 6)))
        ineqs = tuple(q for q in ineqs if not q.is_trivial())
        if not ineqs:
            continue
        p = HPolyhedron(3, ineqs)
        direct = fourier_motzkin_project(p, [0])
        staged = fourier_motzkin_project(fourier_motzkin_project(p, [0, 1]), [0])
        if direct.is_empty or staged.is_empty:
            assert direct.is_empty == staged.is_empty
        else:
            assert same_point_set(direct, staged)


def test_projection_rejects_bad_index_sets():
    with pytest.raises(ContractViolation):
        fourier_motzkin_project(SQUARE, [])
    with pytest.raises(ContractViolation):
        fourier_motzkin_project(SQUARE, [2])


def test_formatting_and_parsing():
    q = ineq([1, 2], 4)
    assert format_le(q) == "1 2 <= 4"
    assert format_ge(q) == "-1 -2 >= -4"
    assert format_human(q) == "x1 + 2 x2 <= 4"
    assert format_human(ge([1, 2], 3), "ge") == "x1 + 2 x2 >= 3"
    assert format_human(ineq([-1, 0], F(7, 2))) == "-x1 <= 7/2"
    assert parse_inequality("x1 + 2 x2 <= 4", 2) == q
    assert parse_inequality("2 x2 + x1 <= 4", 2) == q
    assert parse_inequality("x1 + 2 x2 >= 3", 2) == ge([1, 2], 3)
    assert parse_inequality("1/2 x1 - x2 <= -1/3", 2) == ineq([F(1, 2), -1], F(-1, 3))
    assert parse_le_tokens("1 2 <= 4", 2) == q
    assert parse_le_tokens("1 2 >= 3", 2) == ge([1, 2], 3)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_inequality("x1 + x2", 2)
    with pytest.raises(ParseError):
        parse_inequality("x3 <= 1", 2)
    with pytest.raises(ParseError):
        parse_le_tokens("1 0.5 <= 1", 2)


def test_sorted_unique_canonicalizes():
    out = sorted_unique([ineq([2, 4], 8), ineq([1, 2], 4), ineq([0, 1], 1)])
    assert out == (ineq([0, 1], 1), ineq([1, 2], 4))
