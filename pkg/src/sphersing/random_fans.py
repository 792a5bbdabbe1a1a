"""Random valid spherical spaces, colored fans and boundary divisors for property suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import lattice as lt
from .coloredfan import ColoredCone, ColoredFan, colored_cone_violations, validate_fan
from .divisors import BWeilDivisor
from .feasibility import maximize
from .homspace import Color, ColorType, SphericalSpace, validate_space
from .singularities import boundary_system


@dataclass(frozen=True)
class RandomFanConfig:
    ranks: tuple[int, ...] = (2, 3)
    coord_bound: int = 5
    root_bound: int = 2
    color_bound: int = 3
    max_colors: int = 3
    horospherical_prob: float = 0.5
    max_cones: int = 3
    color_prob: float = 0.35
    attempts: int = 40


def _vec(rng: random.Random, n: int, bound: int) -> tuple[int, ...]:
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(v):
            return v


def random_space(rng: random.Random, cfg: RandomFanConfig = RandomFanConfig()) -> SphericalSpace:
    while True:
        r = rng.choice(cfg.ranks)
        roots = []
        if rng.random() >= cfg.horospherical_prob:
            k = rng.randint(1, r)
            while len(roots) < k:
                g = lt.primitive_of(_vec(rng, r, cfg.root_bound))
                if lt.rank(roots + [g]) == len(roots) + 1:
                    roots.append(g)
        base = SphericalSpace.from_spherical_roots(r, roots, [])
        V = base.valuation_cone
        colors = []
        for i in range(rng.randint(0, cfg.max_colors)):
            sigma = _vec(rng, r, cfg.color_bound)
            if V.contains(sigma):
                a = rng.choice((2, 2, 3, 4))
            else:
                a = rng.choice((1, 1, 2, 3))
            ctype = ColorType.A if a == 1 else ColorType.B
            colors.append(Color(f"D{i}", sigma, ctype, a))
        space = SphericalSpace(r, V, base.spherical_roots, tuple(colors))
        if not validate_space(space):
            return space


def _ray_in_V(rng: random.Random, space: SphericalSpace, bound: int) -> tuple[int, ...]:
    V = space.valuation_cone
    while True:
        v = _vec(rng, space.rank, bound)
        if V.contains(v):
            return lt.primitive_of(v)


def random_colored_cone(rng: random.Random, space: SphericalSpace, cfg: RandomFanConfig) -> ColoredCone:
    r = space.rank
    colors = [c.name for c in space.colors if rng.random() < cfg.color_prob]
    n_rays = rng.randint(0 if colors else 1, r + (1 if rng.random() < 0.2 else 0))
    rays = [_ray_in_V(rng, space, cfg.coord_bound) for _ in range(n_rays)]
    return ColoredCone.build(rays, colors, space)


def random_fan(rng: random.Random, space: SphericalSpace, cfg: RandomFanConfig = RandomFanConfig(),
               name: str = "") -> ColoredFan:
    """Grow a fan cone by cone, keeping a candidate only if the enlarged fan stays valid."""
    target = rng.randint(1, cfg.max_cones)
    cones: list[ColoredCone] = []
    for _ in range(cfg.attempts):
        cc = random_colored_cone(rng, space, cfg)
        if colored_cone_violations(cc, space):
            continue
        cand = ColoredFan.from_maximal(space, cones + [cc])
        if validate_fan(cand):
            continue
        cones = list(cand.cones)
        if len(cones) >= target:
            break
    if not cones:
        cones = [ColoredCone.build([_ray_in_V(rng, space, 1)], [], space)]
    return ColoredFan.from_maximal(space, cones, name)


def random_suite(n: int, seed: int = 0, cfg: RandomFanConfig = RandomFanConfig(),
                 horospherical: bool | None = None) -> list[ColoredFan]:
    """``n`` random valid fans; ``horospherical`` forces the kind of space when given."""
    rng = random.Random(seed)
    if horospherical is not None:
        cfg = RandomFanConfig(**{**cfg.__dict__, "horospherical_prob": 1.0 if horospherical else 0.0})
    out = []
    while len(out) < n:
        space = random_space(rng, cfg)
        out.append(random_fan(rng, space, cfg, name=f"random-{seed}-{len(out)}"))
    return out


def random_boundaries(rng: random.Random, fan: ColoredFan, count: int = 2) -> list[BWeilDivisor]:
    """Effective divisors D with coefficients in [0, 1] and K_X + D Q-Cartier.

    Vertices of that polytope in random directions, plus midpoints between
    consecutive vertices (these tend to have all coefficients below 1).
    """
    sys_ = boundary_system(fan)
    nb = sys_.n_boundary
    A_ub = [[int(i == k) for i in range(sys_.n_vars)] for k in range(nb)]
    points = []
    for _ in range(count):
        c = [rng.randint(-3, 3) for _ in range(nb)] + [0] * (sys_.n_vars - nb)
        res = maximize(c, A_ub, [1] * nb, sys_.A_eq, sys_.b_eq, sys_.free)
        if res.status == "optimal":
            points.append(res.x)
    out = [sys_.divisor(x, fan) for x in points]
    for a, b in zip(points, points[1:] + points[:1]):
        mid = [Fraction(u + v) / 2 for u, v in zip(a, b)]
        out.append(sys_.divisor(mid, fan))
    return out
