import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import POOL, hall_rado_oracle, polymatroids
from polychow.chow import (ChowClass, DimensionUnderflowError,
                           LengthMismatchError, MixedTermsError,
                           SplitOutOfRangeError, VolumePoly, basis_egf,
                           bergman_class, class_combine, degree_cascade,
                           degree_hr, dragon_check, dragon_degree,
                           hyperplane_split, in_base_polytope,
                           indicator_combination_is_zero, is_zero,
                           legal_splits, monomials, multiply_by_h,
                           split_relation, valuative_check, volume_polynomial,
                           zero_class)
from polychow.core import (cap_element, is_loopless, make_boolean, make_H,
                           make_zero, meet)
from polychow.polytopes import base_points
from polychow.suite import random_relation

E1, E2, E12 = 1, 2, 3


def test_degree_examples(p0):
    assert degree_hr(make_boolean((2, 1)), (E1, E1, E2)) == 1
    assert degree_hr(make_zero((2, 1)), ()) == 1
    assert degree_hr(p0, (E2, E2)) == 0
    with pytest.raises(LengthMismatchError):
        degree_hr(p0, (E1,))


def test_cascade_examples(p0):
    step = meet(p0, make_H((2, 1), E2))
    assert step.r == 1
    assert meet(step, make_H((2, 1), E1)).r == 0
    assert degree_cascade(p0, (E2, E1)) == 1
    assert degree_cascade(p0, (E2, E2)) == 0
    assert degree_cascade(make_zero((2, 2)), ()) == 1
    with pytest.raises(LengthMismatchError):
        degree_cascade(p0, ())


@pytest.mark.parametrize("a", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_hall_rado_equals_cascade_exhaustive(a):
    for p in POOL[a]:
        for seq in product(range(1, 1 << p.m), repeat=p.r):
            assert degree_hr(p, seq) == degree_cascade(p, seq) == int(hall_rado_oracle(p, seq))


@given(st.data())
@settings(max_examples=150)
def test_hall_rado_equals_cascade_rank_three(data):
    p = data.draw(polymatroids([(1, 1, 1), (2, 1, 1)]))
    seq = data.draw(st.lists(st.integers(1, 7), min_size=p.r, max_size=p.r))
    assert degree_hr(p, seq) == degree_cascade(p, seq)


@given(st.data())
def test_degree_is_symmetric(data):
    p = data.draw(polymatroids())
    seq = data.draw(st.lists(st.integers(1, (1 << p.m) - 1), min_size=p.r, max_size=p.r))
    shuffled = data.draw(st.permutations(seq))
    assert degree_hr(p, seq) == degree_hr(p, shuffled)


@given(st.data())
def test_monotone_vanishing(data):
    p = data.draw(polymatroids())
    seq = data.draw(st.lists(st.integers(1, (1 << p.m) - 1), min_size=p.r, max_size=p.r))
    for k in range(1, len(seq) + 1):
        for sub in combinations(seq, k):
            if not hall_rado_oracle(p, sub):
                assert degree_hr(p, seq) == 0


def test_monomials_are_canonical():
    monos = monomials(2, 2)
    assert monos == ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))
    assert all(list(m) == sorted(m) for m in monomials(3, 3))


def test_bergman_class_of_p0(p0):
    assert bergman_class(p0).as_dict() == {
        (E1, E1): 1, (E1, E2): 1, (E1, E12): 1, (E2, E2): 0, (E2, E12): 1, (E12, E12): 1}


def test_bergman_class_of_zero():
    xi = bergman_class(make_zero((2, 1)))
    assert xi.k == 0 and xi.pairing(()) == 1


@pytest.mark.parametrize("a", [(2, 1), (1, 1, 1)])
def test_bergman_class_of_h(a):
    boolean = make_boolean(a)
    for s in range(1, 1 << len(a)):
        xi = bergman_class(make_H(a, s))
        for mono in monomials(len(a), sum(a) - 1):
            assert xi.pairing(mono) == degree_hr(boolean, mono + (s,))


def test_multiply_by_h_examples(p0):
    down = multiply_by_h(bergman_class(p0), E2)
    assert down == bergman_class(meet(p0, make_H((2, 1), E2)))
    point = multiply_by_h(multiply_by_h(bergman_class(p0), E1), E12)
    assert point.pairing(()) == degree_hr(p0, (E1, E12))
    with pytest.raises(DimensionUnderflowError):
        multiply_by_h(bergman_class(make_zero((2, 1))), E1)


@given(st.data())
def test_multiplication_compatibility(data):
    p = data.draw(polymatroids([(2, 1), (2, 2), (1, 1, 1), (2, 1, 1)]))
    if p.r == 0:
        return
    s = data.draw(st.integers(1, (1 << p.m) - 1))
    product_class = multiply_by_h(bergman_class(p), s)
    q = meet(p, make_H(p.ground, s))
    if q.r == p.r - 1:
        assert product_class == bergman_class(q)
    else:
        assert is_zero(product_class)


def test_class_combine(p0):
    xi = bergman_class(p0)
    assert is_zero(class_combine([(1, xi), (-1, xi)]))
    assert class_combine([(2, xi)]) == class_combine([(1, xi), (1, xi)])
    assert not is_zero(xi)
    assert is_zero(zero_class(p0.ground, 2))
    with pytest.raises(MixedTermsError):
        class_combine([(1, xi), (1, bergman_class(make_zero((2, 1))))])
    with pytest.raises(MixedTermsError):
        class_combine([])


@pytest.mark.parametrize("fn", [volume_polynomial, basis_egf])
def test_volume_examples(fn, p0):
    assert str(fn(p0)) == "1/2*t1^2 + t1*t2"
    assert str(fn(make_boolean((2, 1)))) == "1/2*t1^2*t2"
    assert str(fn(make_zero((2, 1)))) == "1"
    assert str(fn(make_boolean((3, 2)))) == "1/12*t1^3*t2^2"


def test_volume_poly_formatting():
    poly = VolumePoly.from_dict(2, {(1, 0): Fraction(2), (0, 1): Fraction(-1, 3), (0, 0): 5,
                                    (2, 0): 0})
    assert str(poly) == "2*t1 - 1/3*t2 + 5"
    assert str(VolumePoly.from_dict(1, {})) == "0"
    assert str(VolumePoly.from_dict(2, {(0, 1): -1})) == "-t2"
    assert poly.coefficient((1, 0)) == 2


@given(polymatroids())
def test_volume_equals_basis_egf(p):
    assert volume_polynomial(p) == basis_egf(p)


def test_split_p1(p1):
    q_le, q_ge, q_eq = hyperplane_split(p1, 0, 1)
    assert base_points(q_le) == [(1, 2)]
    assert base_points(q_ge) == [(1, 2), (2, 1)]
    assert base_points(q_eq) == [(1, 2)]


def test_identity_split(p0):
    q_le, q_ge, q_eq = hyperplane_split(p0, 0, 2)
    assert q_le == p0 and q_ge == q_eq


def test_split_out_of_range(p0):
    with pytest.raises(SplitOutOfRangeError) as info:
        hyperplane_split(p0, 0, 0)
    assert info.value.witness == (0, 0, 1, 2)


@given(polymatroids())
def test_split_pieces_slice_the_base_polytope(p):
    for i, c in legal_splits(p):
        q_le, q_ge, q_eq = hyperplane_split(p, i, c)
        assert q_le.r == q_ge.r == q_eq.r == p.r
        pts = base_points(p)
        assert base_points(q_le) == [x for x in pts if x[i] <= c]
        assert base_points(q_ge) == [x for x in pts if x[i] >= c]
        assert base_points(q_eq) == [x for x in pts if x[i] == c]
        if c == p.rank[1 << i]:
            assert q_le == p and q_ge == q_eq


def test_valuative_examples(p0, p1):
    assert valuative_check(split_relation(p1, 0, 1)) == (True, True)
    assert valuative_check([(1, p0)]) == (False, False)
    assert valuative_check([(1, p0), (-1, p0)]) == (True, True)
    with pytest.raises(MixedTermsError):
        valuative_check([(1, p0), (1, p1)])


def _grid_oracle(terms):
    """Evaluate the indicator sum on the grid (1/12)Z^m inside x(E) = r.
    Faces of these arrangements have half-integral vertices when m <= 3, so
    every face contains a grid point."""
    p = terms[0][1]
    m, r = p.m, p.r
    steps = [Fraction(k, 12) for k in range(-12, 12 * (r + 1) + 1)]
    for head in product(steps, repeat=m - 1):
        x = head + (r - sum(head),)
        if sum(c * in_base_polytope(q, x) for c, q in terms) != 0:
            return False
    return True


@pytest.mark.parametrize("seed", range(12))
def test_indicator_decision_matches_grid_oracle(seed):
    rng = random.Random(seed)
    pool = POOL[(2, 1, 1)] if seed % 2 else POOL[(2, 2)]
    terms = random_relation(rng, pool)
    assert indicator_combination_is_zero(terms) == _grid_oracle(terms)
    lhs, rhs = valuative_check(terms)
    assert lhs == rhs


def test_all_splits_rank_three_are_relations():
    rng = random.Random(5)
    for p in rng.sample(POOL[(2, 1, 1)], 6):
        for i, c in legal_splits(p):
            assert valuative_check(split_relation(p, i, c)) == (True, True)


@pytest.mark.parametrize("seq, degree, condition", [((E1,), 1, True), ((E2,), 0, False)])
def test_dragon_examples(p0, seq, degree, condition):
    assert dragon_degree(p0, seq) == degree
    assert dragon_check(p0, seq) is condition


def test_dragon_rank_one():
    for p in POOL[(2, 1)] + POOL[(1, 1, 1)]:
        if p.r == 1 and is_loopless(p):
            assert dragon_degree(p, ()) == 1 and dragon_check(p, ())
    with pytest.raises(LengthMismatchError):
        dragon_degree(make_boolean((1,)), (E1,))
    with pytest.raises(LengthMismatchError):
        dragon_check(make_zero((1,)), ())


@pytest.mark.parametrize("a", [(2, 1), (2, 2), (1, 1, 1)])
def test_dragon_consistency(a):
    for p in POOL[a]:
        if not is_loopless(p) or p.r < 1:
            continue
        for seq in product(range(1, 1 << p.m), repeat=p.r - 1):
            d = dragon_degree(p, seq)
            assert d in (0, 1)
            assert d == int(dragon_check(p, seq))


def test_dragon_condition_needs_looplessness(p0):
    # element 2 becomes a loop: the condition holds but the degree vanishes
    loopy = cap_element(p0, 1, 0)
    assert dragon_check(loopy, (E1,))
    assert dragon_degree(loopy, (E1,)) == 0


def test_chow_class_pairing_lookup_is_order_free(p0):
    xi = bergman_class(p0)
    assert xi.pairing((E12, E1)) == xi.pairing((E1, E12))
    assert isinstance(xi, ChowClass)
