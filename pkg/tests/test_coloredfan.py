import math
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sphersing import lattice as lt
from sphersing.coloredfan import (ColoredCone, ColoredFan, colored_faces, decolor_and_resolve, exists_morphism,
                                  is_complete, validate_fan)
from sphersing.cones import Cone
from sphersing.homspace import SphericalSpace
from sphersing.random_fans import RandomFanConfig, random_fan, random_space

from conftest import horospherical, toric


def _keys(ccs):
    return sorted((tuple(c.cone.rays), tuple(sorted(c.colors))) for c in ccs)


def test_colored_faces_sl3u(sl3u):
    cc = ColoredCone.build([], ["D_alpha", "D_beta"], sl3u)
    assert _keys(colored_faces(cc, sl3u)) == [
        ((), ()),
        (((0, 1),), ("D_beta",)),
        (((0, 1), (1, 0)), ("D_alpha", "D_beta")),
        (((1, 0),), ("D_alpha",)),
    ]


def test_colored_faces_ray():
    space = horospherical(2)
    assert _keys(colored_faces(ColoredCone.build([(1, 0)], [], space), space)) == [((), ()), (((1, 0),), ())]


def test_colored_faces_skip_faces_missing_v():
    # V = {y >= 0}; the face spanned by (1, -1) has relative interior outside V
    space = SphericalSpace.from_spherical_roots(2, [(0, -1)], [])
    faces = _keys(colored_faces(ColoredCone.build([(1, 1), (1, -1)], [], space), space))
    assert (((1, -1),), ()) not in faces
    assert (((1, 1),), ()) in faces and len(faces) == 3


def test_three_cone_fan_valid(three_cone):
    assert validate_fan(three_cone) == []
    assert is_complete(three_cone)


def test_colored_and_colorless_ray_conflict(sl3u):
    fan = ColoredFan.build(sl3u, [
        ([(1, 0), (0, 1)], ["D_alpha", "D_beta"]),
        ([(0, 1), (-1, -1)], []),
        ([(-1, -1), (1, 0)], ["D_alpha"]),
    ])
    bad = validate_fan(fan)
    assert bad and all(v.rule == "fan" for v in bad)
    assert any("(0, 1)" in v.message for v in bad)


def test_overlapping_cones():
    bad = validate_fan(toric([[(1, 0), (0, 1)], [(1, 1), (1, -1)]]))
    assert len(bad) == 1 and bad[0].rule == "fan"


def test_completeness_examples():
    assert not is_complete(toric([[(1, 0), (0, 1)]]))
    # V = <(1,0), (1,2)> is cut out by the roots (-2, 1) and (0, -1)
    space = SphericalSpace.from_spherical_roots(2, [(-2, 1), (0, -1)], [])
    assert space.valuation_cone == Cone([(1, 0), (1, 2)])
    assert is_complete(ColoredFan.build(space, [([(1, 0), (0, 1)], [])]))


def test_morphism_examples(three_cone, sl3u):
    ok, w = exists_morphism(three_cone, three_cone)
    assert ok and w == {i: i for i in range(len(three_cone.cones))}
    trivial = ColoredFan.build(sl3u, [([], [])])
    assert exists_morphism(trivial, three_cone)[0]
    assert not exists_morphism(three_cone, trivial)[0]
    coarse = toric([[(1, 0), (1, 2)]])
    fine = toric([[(1, 0), (1, 1)], [(1, 1), (1, 2)]])
    assert exists_morphism(fine, coarse)[0] and not exists_morphism(coarse, fine)[0]


def test_resolution_examples(three_cone, sl3u):
    p2 = toric([[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]])
    assert {c.key for c in decolor_and_resolve(p2).cones} == {c.key for c in p2.cones}
    res = decolor_and_resolve(toric([[(1, 0), (1, 2)]]))
    assert sorted(tuple(c.cone.rays) for c in res.cones) == [((1, 0), (1, 1)), ((1, 1), (1, 2))]
    single = decolor_and_resolve(ColoredFan.build(sl3u, [([], ["D_alpha", "D_beta"])]))
    assert [(c.cone.rays, c.colors) for c in single.cones] == [(((0, 1), (1, 0)), frozenset())]


def _unimodular(cc):
    rays = list(cc.cone.rays)
    return not rays or (len(rays) == cc.cone.dim and lt.saturation_index(rays) == 1)


def _check_resolution(fan):
    res = decolor_and_resolve(fan)
    assert validate_fan(res) == []
    assert all(not c.colors for c in res.cones)
    assert all(_unimodular(c) for c in res.cones)
    assert exists_morphism(res, fan)[0]
    V = fan.space.valuation_cone
    res_rays = {r for c in res.cones for r in c.cone.rays}
    assert all(V.contains(r) for r in res_rays)
    assert {r for c in fan.cones for r in c.cone.rays if V.contains(r)} <= res_rays


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_resolution_contract(seed):
    rng = random.Random(seed)
    cfg = RandomFanConfig()
    _check_resolution(random_fan(rng, random_space(rng, cfg), cfg))


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_morphism_transitive(seed):
    rng = random.Random(seed)
    cfg = RandomFanConfig(ranks=(2,), max_cones=2)
    space = random_space(rng, cfg)
    fans = [random_fan(rng, space, cfg) for _ in range(3)]
    fans += [decolor_and_resolve(f) for f in fans]
    fans.append(ColoredFan.build(space, [([], [])]))
    m = {(i, j): exists_morphism(a, b)[0] for i, a in enumerate(fans) for j, b in enumerate(fans)}
    for (i, j), ij in m.items():
        for k in range(len(fans)):
            if ij and m[j, k]:
                assert m[i, k]


def _classical_fan_oracle(cones):
    """Plain 2D toric check: pointed cones, no ray strictly inside another sector, no duplicates."""
    def ang(v):
        return math.atan2(v[1], v[0])

    sectors = []
    for gens in cones:
        rays = sorted({lt.primitive_of(g) for g in gens})
        if len(rays) == 2:
            u, v = rays
            cross = u[0] * v[1] - u[1] * v[0]
            if cross == 0:
                return False  # opposite rays: a line
            sectors.append((u, v) if cross > 0 else (v, u))
    all_rays = {lt.primitive_of(g) for gens in cones for g in gens}
    for u, v in sectors:
        for w in all_rays:
            if w in (u, v):
                continue
            if u[0] * w[1] - u[1] * w[0] > 0 and w[0] * v[1] - w[1] * v[0] > 0:
                return False
    return True


ray = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(any)


@given(st.lists(st.lists(ray, min_size=1, max_size=2), min_size=1, max_size=4))
@settings(max_examples=200, deadline=None)
def test_colorless_validator_matches_classical(cones):
    fan = toric(cones, rank=2)
    assert (validate_fan(fan) == []) == _classical_fan_oracle(cones)


def test_faces_present_after_validation(three_cone):
    faces = {c.key for c in three_cone.all_cones}
    for mc in three_cone.cones:
        for f in colored_faces(mc, three_cone.space):
            assert f.key in faces
