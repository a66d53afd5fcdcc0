import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import POOL, polymatroids
from polychow.core import (cap_element, elements_of, flats, is_loopless,
                           make_boolean, make_zero)
from polychow.documents import lifted_names, parse_fan_doc
from polychow.fans import (ConeLabel, LoopyPolymatroidError, NonPureFanError,
                           WeightedFan, aug_bergman_fan, balancing_failure,
                           cone_contains, f_polynomial, fan_to_json,
                           hpoly_identity_check, hpoly_identity_sides,
                           in_support, is_balanced, is_compatible,
                           polypermutohedral_fan, polystell_fan, star_empty,
                           support_equality_sample, supports_agree)
from polychow.lift import GroundMap, msym_lift
from polychow.linalg import solve

PI21 = GroundMap((2, 1))
A1, B1, TWO = 1, 2, 4
E1, E2, E12 = 1, 2, 3


@pytest.mark.parametrize("a, count, f", [
    ((1,), 3, (1, 2)),
    ((1, 1), 11, (1, 5, 5)),
    ((2,), 7, (1, 3, 3)),
])
def test_polystell_counts(a, count, f):
    fan = polystell_fan(GroundMap(a))
    assert len(fan.weights) == count
    assert f_polynomial(fan) == f


def test_polystell_type_11_rays():
    fan = polystell_fan(GroundMap((1, 1)))
    rays = sorted(tuple(fan.rays_of(c)[0]) for c in fan.cones if c.dim == 1)
    assert rays == sorted([(1, 0), (0, 1), (-1, -1), (0, -1), (-1, 0)])


def test_polystell_up_to_dim():
    fan = polystell_fan(GroundMap((1, 1)), up_to_dim=1)
    assert f_polynomial(fan) == (1, 5)


def test_zero_type_entry_rejected():
    with pytest.raises(ValueError):
        polystell_fan(GroundMap((1, 0)))


@given(st.sampled_from([(1,), (2,), (1, 1), (2, 1), (1, 1, 1), (3,)]),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_polystell_fan_is_complete(a, x):
    pi = GroundMap(a)
    fan = polystell_fan(pi)
    assert in_support(fan, x[:pi.n])


@pytest.mark.parametrize("a", [(1,), (2,), (1, 1), (2, 1), (1, 1, 1), (2, 2)])
def test_polystell_fan_is_balanced(a):
    fan = polystell_fan(GroundMap(a))
    assert fan.is_pure() and fan.dimension() == sum(a)
    assert is_balanced(fan)


def test_bergman_fan_examples(p0):
    fan = aug_bergman_fan(make_boolean((1,)), GroundMap((1,)))
    assert len(fan.weights) == 3
    zero = aug_bergman_fan(make_zero((1,)), GroundMap((1,)))
    assert zero.cones == [ConeLabel(0, ())]
    assert zero.dimension() == 0


def test_p0_maximal_cones(p0):
    fan = aug_bergman_fan(p0, PI21)
    expected = {
        ConeLabel(A1 | B1), ConeLabel(A1 | TWO), ConeLabel(B1 | TWO),
        ConeLabel(A1, (0,)), ConeLabel(B1, (0,)), ConeLabel(TWO, (E2,)),
        ConeLabel(0, (0, E2)),
    }
    assert set(fan.maximal_cones()) == expected
    assert fan.is_pure() and fan.dimension() == 2
    assert is_balanced(fan)


def test_deleting_a_maximal_cone_breaks_balancing(p0):
    fan = aug_bergman_fan(p0, PI21)
    broken = fan.without([ConeLabel(TWO, (E2,))])
    assert not is_balanced(broken)
    assert balancing_failure(broken) == ConeLabel(0, (E2,))


def test_balancing_needs_a_pure_fan():
    fan = WeightedFan(GroundMap((1, 1)), {ConeLabel(0): 1, ConeLabel(1): 1, ConeLabel(2): 1,
                                          ConeLabel(3): 1, ConeLabel(0, (0,)): 1})
    with pytest.raises(NonPureFanError):
        is_balanced(fan)


@given(polymatroids([(1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (2, 1, 1)]))
@settings(max_examples=40)
def test_bergman_fans_pure_balanced_subfans(p):
    pi = GroundMap(p.a)
    fan = aug_bergman_fan(p, pi)
    assert fan.is_pure() and fan.dimension() == p.r
    assert is_balanced(fan)
    everything = polystell_fan(pi).weights
    for c in fan.cones:
        assert is_compatible(pi, c) and c in everything


@pytest.mark.parametrize("a", [(1, 1), (2, 1), (2, 2)])
def test_boolean_fan_is_the_whole_polystellahedral_fan(a):
    pi = GroundMap(a)
    assert aug_bergman_fan(make_boolean(a), pi) == polystell_fan(pi)


@pytest.mark.parametrize("n", [2, 3])
def test_matroid_specialization(n):
    pi = GroundMap.identity(n)
    for p in POOL[(1,) * n]:
        fl = [f for f in flats(p)[0] if f != p.ground.full]
        indep = [s for s in range(1 << n) if p.rank[s] == bin(s).count("1")]
        expected = set()
        for c in polystell_fan(pi).cones:
            first = c.chain[0] if c.chain else p.ground.full
            if c.I in indep and all(f in fl for f in c.chain) and c.I & ~first == 0:
                expected.add(c)
        assert set(aug_bergman_fan(p, pi).cones) == expected


def test_star_examples():
    pi1 = GroundMap((1,))
    b1 = make_boolean((1,))
    star = star_empty(aug_bergman_fan(b1, pi1), b1)
    assert star.cones == [ConeLabel(0, ())]
    pi11 = GroundMap((1, 1))
    star = star_empty(polystell_fan(pi11), make_boolean((1, 1)))
    assert sorted(star.cones) == [ConeLabel(0, ()), ConeLabel(0, (E1,)), ConeLabel(0, (E2,))]
    assert star.quotient


def test_star_of_loopy_polymatroid(p0):
    capped = cap_element(p0, 1, 0)
    with pytest.raises(LoopyPolymatroidError) as info:
        star_empty(aug_bergman_fan(capped, PI21), capped)
    assert info.value.witness == (E2,)


@pytest.mark.parametrize("a", [(1,), (2,), (1, 1), (2, 1), (1, 1, 1), (2, 2)])
def test_polypermutohedral_fans_balanced_in_the_quotient(a):
    fan = polypermutohedral_fan(GroundMap(a))
    assert fan.is_pure() and fan.dimension() == sum(a) - 1
    assert is_balanced(fan)


@given(polymatroids([(2, 1), (2, 2), (2, 1, 1)]))
@settings(max_examples=30)
def test_bergman_stars_balanced(p):
    if not is_loopless(p) or p.r == 0:
        return
    pi = GroundMap(p.a)
    star = star_empty(aug_bergman_fan(p, pi), p)
    assert star.dimension() == p.r - 1
    assert is_balanced(star)


def test_f_polynomial_of_empty_fan():
    assert f_polynomial(WeightedFan(GroundMap((1,)), {})) == ()


def test_hpoly_sides_hand_values():
    assert hpoly_identity_sides(GroundMap((1,))) == ((1, 2), (1, 2))
    assert hpoly_identity_sides(GroundMap((1, 1)))[0] == (1, 5, 5)


@pytest.mark.parametrize("a", [(1,), (2,), (1, 1), (2, 1), (3,), (1, 1, 1), (2, 2), (3, 1)])
def test_hpoly_identity(a):
    assert hpoly_identity_check(GroundMap(a))


def _contains_oracle(fan, label, x):
    rays = fan.rays_of(label)
    if not rays:
        return all(v == 0 for v in x)
    columns = [[rays[k][j] for k in range(len(rays))] for j in range(fan.n)]
    coeffs = solve(columns, x, len(rays))
    return coeffs is not None and all(c >= 0 for c in coeffs)


@given(st.data())
@settings(max_examples=200)
def test_cone_membership_matches_linear_solve(data):
    a = data.draw(st.sampled_from([(1, 1), (2, 1), (1, 2), (1, 1, 1)]))
    pi = GroundMap(a)
    fan = polystell_fan(pi)
    label = data.draw(st.sampled_from(fan.cones))
    rays = fan.rays_of(label)
    if data.draw(st.booleans()) and rays:
        coeffs = data.draw(st.lists(st.integers(0, 3), min_size=len(rays), max_size=len(rays)))
        x = [sum(c * r[j] for c, r in zip(coeffs, rays)) for j in range(pi.n)]
    else:
        x = data.draw(st.lists(st.integers(-3, 3), min_size=pi.n, max_size=pi.n))
    assert cone_contains(pi, label, x) == _contains_oracle(fan, label, x)


def test_support_examples(p0):
    assert support_equality_sample(p0, PI21, 1000, 0)
    assert support_equality_sample(make_boolean((1,)), GroundMap((1,)), 200, 0)
    lift_fan = aug_bergman_fan(msym_lift(make_boolean((2, 1)), PI21), GroundMap.identity(3))
    assert not supports_agree(aug_bergman_fan(p0, PI21), lift_fan, 200, random.Random(0))


@given(polymatroids([(2, 1), (1, 2), (2, 2), (2, 1, 1)]), st.integers(0, 2 ** 16))
@settings(max_examples=20, deadline=None)
def test_support_equality_random(p, seed):
    assert support_equality_sample(p, GroundMap(p.a), 200, seed)


def test_support_detects_a_missing_cone(p0):
    fan = aug_bergman_fan(p0, PI21)
    lift_fan = aug_bergman_fan(msym_lift(p0, PI21), GroundMap.identity(3))
    broken = fan.without([ConeLabel(TWO, (E2,))])
    assert not supports_agree(broken, lift_fan, 500, random.Random(1))


def test_rational_points_are_scaled_not_rounded(p0):
    fan = aug_bergman_fan(p0, PI21)
    # 1/2 * rho_empty lies on a ray of the fan
    x = [Fraction(-1, 2)] * 3
    assert in_support(fan, [int(2 * v) for v in x])


def test_json_roundtrip(p0):
    fan = aug_bergman_fan(p0, PI21)
    names = ["1", "2"]
    doc = {"type": [2, 1], "elements": names,
           "cones": fan_to_json(fan, names, lifted_names(names, (2, 1)))}
    parsed, _ = parse_fan_doc(doc)
    assert parsed == fan
    assert doc["cones"][0] == {"I": [], "chain": [], "weight": 1}


def test_cone_label_faces():
    c = ConeLabel(0b11, (0, 2))
    assert c.dim == 4
    assert c.contains(ConeLabel(1, (2,)))
    assert not c.contains(ConeLabel(4, ()))
    assert len(list(c.facets())) == 4
    assert elements_of(c.I) == [0, 1]


def test_bergman_fan_of_p0_rays_match_flats(p0):
    fan = aug_bergman_fan(p0, PI21)
    chains = {f for c in fan.cones for f in c.chain}
    assert chains == {0, E2}
