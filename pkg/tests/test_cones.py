from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sphersing import lattice as lt
from sphersing.cones import Cone, covers, truncated_lattice_points
from sphersing.errors import NotPointed, UnboundedTruncation

from conftest import HALF_111


def test_membership_examples():
    C = Cone([(1, 0), (0, 1)])
    assert C.contains((1, 1)) and C.relint_contains((1, 1))
    assert C.contains((1, 0)) and not C.relint_contains((1, 0))
    D = Cone([(1, 0), (1, 2)])
    assert D.contains((1, 1)) and D.relint_contains((1, 1))
    assert D.contains((Fraction(1, 2), Fraction(1, 3)))


@pytest.mark.parametrize("gens,expected", [
    ([(1, 0), (-1, 0)], True),
    ([(1, 0), (0, 1)], False),
    ([(1, 0), (-1, 1), (0, -1)], True),
])
def test_contains_line(gens, expected):
    assert Cone(gens).contains_line() is expected


@pytest.mark.parametrize("gens,count", [([(1, 0), (0, 1)], 4), ([(1, 1)], 2), (HALF_111, 8)])
def test_face_counts(gens, count):
    assert len(Cone(gens).faces()) == count


def test_faces_need_pointed():
    with pytest.raises(NotPointed):
        Cone([(1, 0), (-1, 0)]).faces()


def test_covers_examples():
    p2 = [Cone([(1, 0), (0, 1)]), Cone([(0, 1), (-1, -1)]), Cone([(-1, -1), (1, 0)])]
    assert covers(p2, Cone.full(2))[0]
    ok, witness = covers([Cone([(1, 0), (0, 1)])], Cone.full(2))
    assert not ok
    assert not Cone([(1, 0), (0, 1)]).contains(witness)
    assert covers([Cone([(1, 0), (0, 1)])], Cone([(1, 0), (1, 1)]))[0]


def _box_oracle(gens, h, bound=12):
    C = Cone(gens)
    n = len(gens[0])
    return sorted(x for x in product(range(-bound, bound + 1), repeat=n)
                  if C.contains(x) and 0 < lt.dot(h, x) <= 1)


@pytest.mark.parametrize("gens,h,expected", [
    ([(1, 0), (0, 1)], (1, 1), [(0, 1), (1, 0)]),
    ([(1, 0), (1, 2)], (1, 0), [(1, 0), (1, 1), (1, 2)]),
    (HALF_111, (1, 1, Fraction(-1, 2)), [(0, 1, 0), (1, 0, 0), (1, 1, 2)]),
])
def test_truncated_examples(gens, h, expected):
    assert sorted(truncated_lattice_points(Cone(gens), h)) == expected
    assert _box_oracle(gens, h, bound=4) == expected


def test_truncated_unbounded():
    with pytest.raises(UnboundedTruncation):
        truncated_lattice_points(Cone([(1, 0), (0, 1)]), (1, 0))


vec2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(any)


@given(vec2, vec2, st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=120, deadline=None)
def test_truncated_matches_box_oracle(u, v, a, b, q):
    C = Cone([u, v])
    assume(C.is_pointed and C.dim == 2)
    d1, d2 = C.dual().rays
    h = tuple(Fraction(a * x + b * y, q) for x, y in zip(d1, d2))
    # {h <= 1} is the hull of 0 and r / h(r); h(r) >= 1/q on integral rays, so |x| <= 4q
    assert sorted(truncated_lattice_points(C, h)) == _box_oracle([u, v], h, bound=4 * q)


@given(vec2, vec2, vec2)
@settings(max_examples=60, deadline=None)
def test_truncated_presentation_invariant(u, v, extra):
    C = Cone([u, v])
    assume(C.is_pointed and C.dim == 2 and C.contains(extra))
    h = tuple(sum(c) for c in zip(*[lt.primitive_of(r) for r in C.dual().rays]))
    assume(all(lt.dot(h, r) > 0 for r in C.rays))
    assert sorted(truncated_lattice_points(Cone([u, v, extra]), h)) == sorted(truncated_lattice_points(C, h))


vec3 = st.tuples(*[st.integers(-3, 3)] * 3).filter(any)


@given(st.lists(vec3, min_size=3, max_size=5))
@settings(max_examples=80, deadline=None)
def test_double_duality(gens):
    C = Cone(gens)
    assume(C.is_pointed and C.dim == 3)
    assert C.dual().dual() == C


@given(st.lists(vec3, min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_faces_closed(gens):
    C = Cone(gens)
    assume(C.is_pointed)
    faces = set(C.faces())
    for F in faces:
        assert set(F.faces()) <= faces
    for F in faces:
        for G in faces:
            assert F.intersect(G) in faces


@given(st.lists(st.lists(vec2, min_size=1, max_size=2), min_size=1, max_size=4), st.lists(vec2, min_size=1, max_size=2))
@settings(max_examples=60, deadline=None)
def test_covers_monotone(cone_gens, extra):
    cones = [Cone(g) for g in cone_gens]
    V = Cone.full(2)
    if covers(cones, V)[0]:
        assert covers(cones + [Cone(extra)], V)[0]
    else:
        ok, w = covers(cones, V)
        assert not any(c.contains(w) for c in cones)


def test_relint_point_inside():
    C = Cone(HALF_111)
    assert C.relint_contains(C.relint_point())


def test_halfspace_and_intersection():
    C = Cone([(1, 0), (1, 2)])
    assert C.intersect(Cone([(1, 0), (1, 1)])) == Cone([(1, 0), (1, 1)])
    assert C.dual() == Cone([(2, -1), (0, 1)])
