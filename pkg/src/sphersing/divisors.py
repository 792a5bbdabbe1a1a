"""B-stable Weil divisors: Cartier tests, support functions, positivity, -K_X."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import lattice as lt
from .coloredfan import ColoredFan, exists_morphism, is_complete
from .errors import NotCartier, NotComplete, RayNotInSupport


@dataclass(frozen=True)
class BWeilDivisor:
    """sum a_i X_i + sum a_D D, keyed by colorless-ray primitives and color names."""

    stable: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)
    colors: Mapping[str, Fraction] = field(default_factory=dict)

    def coeff_ray(self, x) -> Fraction:
        return Fraction(self.stable.get(tuple(x), 0))

    def coeff_color(self, name: str) -> Fraction:
        return Fraction(self.colors.get(name, 0))

    def __add__(self, other: BWeilDivisor) -> BWeilDivisor:
        return self.combine(other, 1)

    def __sub__(self, other: BWeilDivisor) -> BWeilDivisor:
        return self.combine(other, -1)

    def __neg__(self) -> BWeilDivisor:
        return self.scale(-1)

    def scale(self, k) -> BWeilDivisor:
        k = Fraction(k)
        return BWeilDivisor({x: k * v for x, v in self.stable.items()}, {c: k * v for c, v in self.colors.items()})

    def combine(self, other: BWeilDivisor, k) -> BWeilDivisor:
        stable = {x: self.coeff_ray(x) + k * other.coeff_ray(x) for x in set(self.stable) | set(other.stable)}
        colors = {c: self.coeff_color(c) + k * other.coeff_color(c) for c in set(self.colors) | set(other.colors)}
        return BWeilDivisor(stable, colors)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(v) for v in self.stable.values()] + [Fraction(v) for v in self.colors.values()]

    def is_effective(self) -> bool:
        return all(v >= 0 for v in self.coefficients())

    def round_down_is_zero(self) -> bool:
        """Whether the round-down of the (effective) divisor vanishes: all coefficients < 1."""
        return all(v < 1 for v in self.coefficients())

    def normalized(self, fan: ColoredFan) -> BWeilDivisor:
        """Same divisor with an explicit coefficient on every colorless ray and every color."""
        return BWeilDivisor(
            {x: self.coeff_ray(x) for x in fan.colorless_rays},
            {c: self.coeff_color(c) for c in fan.space.color_names},
        )


def zero_divisor(fan: ColoredFan) -> BWeilDivisor:
    return BWeilDivisor().normalized(fan)


def principal_divisor(fan: ColoredFan, m: Sequence) -> BWeilDivisor:
    """div(f_m): coefficient <m, x_i> on X_i and <m, sigma(D)> on every color."""
    return BWeilDivisor(
        {x: Fraction(lt.dot(m, x)) for x in fan.colorless_rays},
        {c.name: Fraction(lt.dot(m, c.sigma)) for c in fan.space.colors},
    )


@dataclass(frozen=True)
class PiecewiseLinearFn:
    """One covector per maximal colored cone; the support function h_delta."""

    fan: ColoredFan
    pieces: tuple[tuple[Fraction, ...], ...]

    def on_cone(self, i: int, x) -> Fraction:
        return lt.dot(self.pieces[i], x)

    def __call__(self, x) -> Fraction:
        cones = self.fan.cones_containing(x)
        if not cones:
            raise RayNotInSupport(f"{tuple(x)} is not in the support of the fan")
        return self.on_cone(cones[0], x)

    @property
    def is_integral(self) -> bool:
        return all(lt.is_integral(m) for m in self.pieces)


@dataclass(frozen=True)
class CartierResult:
    ok: bool
    pl: PiecewiseLinearFn | None = None
    failing_cone: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def cone_system(fan: ColoredFan, i: int, delta: BWeilDivisor):
    """Linear conditions <chi, v> = value imposed on chi by the i-th maximal cone."""
    cc = fan.cones[i]
    A, b = [], []
    for x in cc.colorless_rays(fan.space):
        A.append(list(x))
        b.append(delta.coeff_ray(x))
    for c in sorted(cc.colors):
        A.append(list(fan.space.sigma(c)))
        b.append(delta.coeff_color(c))
    return A, b


def cartier_data(fan: ColoredFan, delta: BWeilDivisor, integral: bool = True) -> CartierResult:
    """Cartier (integral=True) or Q-Cartier test; returns the support function on success."""
    pieces = []
    for i in range(len(fan.cones)):
        A, b = cone_system(fan, i, delta)
        if lt.solve_rational(A, b, fan.rank) is None:
            return CartierResult(False, failing_cone=i, reason=f"inconsistent linear system on cone {i}")
        if integral:
            chi = lt.solve_integer(A, b, fan.rank)
            if chi is None:
                return CartierResult(False, failing_cone=i, reason=f"no integral solution on cone {i}")
            chi = tuple(Fraction(c) for c in chi)
        else:
            chi = lt.solve_rational(A, b, fan.rank)
        pieces.append(chi)
    return CartierResult(True, PiecewiseLinearFn(fan, tuple(pieces)))


def anticanonical(fan: ColoredFan) -> BWeilDivisor:
    """-K_X: coefficient 1 on every G-stable prime divisor, a_D on every color."""
    return BWeilDivisor(
        {x: Fraction(1) for x in fan.colorless_rays},
        {c.name: Fraction(c.a_D) for c in fan.space.colors},
    )


def _positivity(fan: ColoredFan, delta: BWeilDivisor, strict: bool) -> bool:
    if not is_complete(fan):
        raise NotComplete("global generation / ampleness need a complete fan")
    res = cartier_data(fan, delta, integral=True)
    if not res:
        raise NotCartier(res.reason)
    pl = res.pl
    space = fan.space
    for i, ci in enumerate(fan.cones):
        for j, cj in enumerate(fan.cones):
            if i == j:
                continue
            gens = list(cj.colorless_rays(space)) + [space.sigma(c) for c in sorted(cj.colors)]
            for y in gens:
                diff = pl.on_cone(j, y) - pl.on_cone(i, y)
                if diff < 0:
                    return False
                if strict and diff == 0 and not ci.cone.contains(y):
                    return False
    for c in space.colors:
        if c.name in fan.colors:
            continue
        if not fan.support_contains(c.sigma):
            raise RayNotInSupport(f"sigma({c.name}) = {c.sigma} lies outside the support of the fan")
        value = pl(c.sigma)
        a = delta.coeff_color(c.name)
        if value > a or (strict and value == a):
            return False
    return True


def is_globally_generated(fan: ColoredFan, delta: BWeilDivisor) -> bool:
    return _positivity(fan, delta, strict=False)


def is_ample(fan: ColoredFan, delta: BWeilDivisor) -> bool:
    return _positivity(fan, delta, strict=True)


def pullback_coefficient(src: ColoredFan, dst: ColoredFan, delta: BWeilDivisor, ray) -> Fraction:
    """Coefficient of the G-stable divisor of ``src`` with primitive ``ray`` in f^*(delta)."""
    ok, _ = exists_morphism(src, dst)
    if not ok:
        raise ValueError("no equivariant morphism between the fans")
    res = cartier_data(dst, delta, integral=False)
    if not res:
        raise NotCartier(f"delta is not Q-Cartier: {res.reason}")
    return res.pl(tuple(ray))
