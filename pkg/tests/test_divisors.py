import random
from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphersing import lattice as lt
from sphersing.coloredfan import ColoredFan, decolor_and_resolve
from sphersing.divisors import (BWeilDivisor, anticanonical, cartier_data, cone_system, is_ample,
                                is_globally_generated, pullback_coefficient, zero_divisor)
from sphersing.errors import NotCartier, NotComplete
from sphersing.random_fans import random_suite

from conftest import HALF_111, three_color_fan, toric
from test_homspace import sl2_squared_mod_diagonal

P2 = [[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]]


def ones(fan):
    return BWeilDivisor({x: Fraction(1) for x in fan.colorless_rays}, {})


def test_zero_divisor_cartier(three_cone):
    res = cartier_data(three_cone, zero_divisor(three_cone))
    assert res.ok and all(m == (0, 0) for m in res.pl.pieces)


def test_p2_hyperplane_sum():
    fan = toric(P2)
    res = cartier_data(fan, ones(fan))
    assert res.ok
    i = next(k for k, c in enumerate(fan.cones) if c.cone.rays == ((0, 1), (1, 0)))
    assert res.pl.pieces[i] == (1, 1)


def test_three_colors_not_q_cartier():
    fan = three_color_fan()
    res = cartier_data(fan, anticanonical(fan), integral=False)
    assert not res.ok and res.failing_cone == 0
    A, b = cone_system(fan, 0, anticanonical(fan))
    assert lt.solve_rational(A, b, 2) is None


def test_positivity_p2():
    fan = toric(P2)
    assert is_ample(fan, ones(fan))
    assert is_globally_generated(fan, zero_divisor(fan))
    assert not is_ample(fan, zero_divisor(fan))


def test_anticanonical_sl3u_ample(three_cone):
    K = anticanonical(three_cone)
    assert dict(K.stable) == {(-1, -1): 1}
    assert dict(K.colors) == {"D_alpha": 2, "D_beta": 2}
    assert is_ample(three_cone, K)


def test_anticanonical_toric_all_ones():
    fan = toric([[(1, 0), (1, 2)], [(1, 2), (-1, 0)]])
    assert set(anticanonical(fan).stable.values()) == {1}


def test_anticanonical_sl2_squared():
    space = sl2_squared_mod_diagonal()
    fan = ColoredFan.build(space, [([(-1,)], [])])
    assert anticanonical(fan).colors == {"D": 2}


def test_positivity_errors():
    cone = toric([[(1, 0), (1, 2)]])
    with pytest.raises(NotComplete):
        is_globally_generated(cone, zero_divisor(cone))
    fan = toric([[(1, 0), (1, 2)], [(1, 2), (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), (1, 0)]])
    D = BWeilDivisor({(1, 0): Fraction(1)}, {})
    with pytest.raises(NotCartier):
        is_ample(fan, D)


def test_pullback_examples():
    fan = toric([[(1, 0), (1, 2)]])
    assert pullback_coefficient(fan, fan, BWeilDivisor({(1, 2): Fraction(5)}), (1, 2)) == 5
    finer = toric([[(1, 0), (1, 1)], [(1, 1), (1, 2)]])
    assert pullback_coefficient(finer, fan, ones(fan), (1, 1)) == 1
    half = toric([HALF_111])
    assert cartier_data(half, anticanonical(half), integral=False).pl.pieces == ((1, 1, Fraction(-1, 2)),)
    res = decolor_and_resolve(half)
    assert pullback_coefficient(res, half, anticanonical(half), (1, 1, 1)) == Fraction(3, 2)


def _random_divisor(rng, fan):
    return BWeilDivisor({x: Fraction(rng.randint(-3, 3)) for x in fan.colorless_rays},
                        {c: Fraction(rng.randint(-3, 3)) for c in fan.space.color_names})


def _check_pl(fan, delta, pl):
    for i in range(len(fan.cones)):
        A, b = cone_system(fan, i, delta)
        assert [lt.dot(row, pl.pieces[i]) for row in A] == list(b)


SUITE = random_suite(60, seed=11)


@given(st.integers(0, 59), st.integers(0, 10_000))
@settings(max_examples=80, deadline=None)
def test_cartier_linear(idx, seed):
    fan, rng = SUITE[idx], random.Random(seed)
    d1, d2 = _random_divisor(rng, fan), _random_divisor(rng, fan)
    r1, r2 = cartier_data(fan, d1, False), cartier_data(fan, d2, False)
    for d, r in ((d1, r1), (d2, r2)):
        if r.ok:
            _check_pl(fan, d, r.pl)
    if r1.ok and r2.ok:
        total = d1 + d2
        assert cartier_data(fan, total, False).ok
        summed = type(r1.pl)(fan, tuple(tuple(a + b for a, b in zip(u, v)) for u, v in zip(r1.pl.pieces, r2.pl.pieces)))
        _check_pl(fan, total, summed)


@given(st.integers(0, 59), st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_clearing_denominators_gives_cartier(idx, seed):
    fan, rng = SUITE[idx], random.Random(seed)
    d = _random_divisor(rng, fan)
    r = cartier_data(fan, d, False)
    if not r.ok:
        return
    k = lcm(1, *(Fraction(c).denominator for m in r.pl.pieces for c in m))
    assert cartier_data(fan, d.scale(k), True).ok


def test_anticanonical_positive_integers():
    for fan in SUITE:
        assert all(v >= 1 and Fraction(v).denominator == 1 for v in anticanonical(fan).coefficients())


def test_pl_agrees_on_shared_faces():
    for fan in SUITE:
        res = cartier_data(fan, anticanonical(fan), False)
        if not res.ok:
            continue
        for c in fan.all_cones:
            x = c.cone.relint_point()
            idx = [i for i, mc in enumerate(fan.cones) if mc.cone.contains(x) and c.colors <= mc.colors]
            assert len({res.pl.on_cone(i, x) for i in idx}) == 1
