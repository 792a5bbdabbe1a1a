"""The combinatorial datum of a spherical homogeneous space G/H.

Only the data the singularity criteria consume is modelled: the rank, the
valuation cone, the spherical roots, the colors with their images in N and
their anticanonical coefficients, and optionally enough root data to derive
color types and coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import lattice as lt
from .cones import Cone
from .errors import InconsistentSphericalRoots, InvalidRootData


class ColorType(str, Enum):
    A = "a"
    TWO_A = "2a"
    B = "b"


@dataclass(frozen=True)
class RootData:
    """Root-system data of G restricted to the lattices of G/H.

    ``cartan[i][j]`` is the pairing <alpha_i, alpha_j^vee>. Positive roots are
    coefficient vectors over the simple roots. ``simple_roots[i]`` is alpha_i as
    a covector on N, or None when alpha_i is not in M_Q. ``coroots[i]`` is the
    restriction of alpha_i^vee to M, an element of N.
    """

    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    parabolic_set: frozenset[int]
    coroots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[Fraction, ...] | None, ...]

    @property
    def n_simple(self) -> int:
        return len(self.cartan)

    @classmethod
    def standard(cls, cartan, positive_roots, parabolic_set) -> RootData:
        """Root data with M the full weight lattice: N has the coroot basis."""
        n = len(cartan)
        coroots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        simple = tuple(tuple(Fraction(cartan[i][j]) for j in range(n)) for i in range(n))
        return cls(
            tuple(tuple(r) for r in cartan),
            tuple(tuple(r) for r in positive_roots),
            frozenset(parabolic_set),
            coroots,
            simple,
        )

    def check(self) -> list[str]:
        problems = []
        n = self.n_simple
        if any(len(row) != n for row in self.cartan):
            problems.append("Cartan matrix is not square")
        elif any(self.cartan[i][i] != 2 for i in range(n)):
            problems.append("Cartan matrix must have 2 on the diagonal")
        if any(len(r) != n or any(c < 0 for c in r) or not any(r) for r in self.positive_roots):
            problems.append("positive roots must be nonzero nonnegative combinations of simple roots")
        if not self.parabolic_set <= set(range(n)):
            problems.append("parabolic set is not a set of simple-root indices")
        if len(self.coroots) != n or len(self.simple_roots) != n:
            problems.append("one restricted coroot and one simple-root entry needed per simple root")
        return problems


@dataclass(frozen=True)
class Color:
    name: str
    sigma: tuple[int, ...]
    ctype: ColorType
    a_D: int
    moving_root: int | None = None


def classify_color_type(alpha: int, spherical_roots: Sequence[Sequence], root_data: RootData) -> ColorType:
    """Type of the colors moved by the simple root ``alpha``."""
    simple = root_data.simple_roots[alpha]
    if simple is None:
        return ColorType.B
    roots = {tuple(Fraction(c) for c in g) for g in spherical_roots}
    is_a = tuple(simple) in roots
    is_2a = tuple(2 * c for c in simple) in roots
    if is_a and is_2a:
        raise InconsistentSphericalRoots(f"both alpha_{alpha} and 2 alpha_{alpha} are spherical roots")
    if is_a:
        return ColorType.A
    if is_2a:
        return ColorType.TWO_A
    return ColorType.B


def color_coefficient(ctype: ColorType, alpha: int | None = None, root_data: RootData | None = None) -> int:
    """Coefficient a_D of a color of the given type in the anticanonical divisor.

    For type b this is the pairing of the sum of the positive roots involving
    a simple root of the parabolic set with alpha^vee.
    """
    if ctype in (ColorType.A, ColorType.TWO_A):
        return 1
    if root_data is None or alpha is None:
        raise InvalidRootData("type b coefficient needs root data and the moving simple root")
    involved = [r for r in root_data.positive_roots if any(r[i] for i in root_data.parabolic_set)]
    value = sum(c * root_data.cartan[i][alpha] for r in involved for i, c in enumerate(r))
    if value < 2:
        raise InvalidRootData(f"type b coefficient {value} < 2 for simple root {alpha}")
    return value


@dataclass(frozen=True)
class SphericalSpace:
    rank: int
    valuation_cone: Cone
    spherical_roots: tuple[tuple[Fraction, ...], ...]
    colors: tuple[Color, ...]
    root_data: RootData | None = None
    _by_name: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {c.name: c for c in self.colors})

    @classmethod
    def from_spherical_roots(cls, rank, spherical_roots, colors, root_data=None) -> SphericalSpace:
        """Space whose valuation cone is {v : <gamma, v> <= 0 for every spherical root gamma}."""
        roots = tuple(tuple(Fraction(c) for c in g) for g in spherical_roots)
        V = Cone.from_inequalities([tuple(-c for c in g) for g in roots], rank)
        return cls(rank, V, roots, tuple(colors), root_data)

    @property
    def is_horospherical(self) -> bool:
        return not self.spherical_roots

    def color(self, name: str) -> Color:
        return self._by_name[name]

    def sigma(self, name: str) -> tuple[int, ...]:
        return self._by_name[name].sigma

    @property
    def color_names(self) -> list[str]:
        return [c.name for c in self.colors]


def make_color(
    name: str,
    space_roots: Sequence[Sequence],
    root_data: RootData | None,
    *,
    sigma: Sequence[int] | None = None,
    ctype: ColorType | str | None = None,
    a_D: int | None = None,
    moving_root: int | None = None,
) -> Color:
    """Build a color from explicit data, or derive missing fields from root data.

    Explicitly given fields are kept as given; :func:`validate_space` reports
    any disagreement with the derived values.
    """
    if ctype is not None:
        ctype = ColorType(ctype)
    if moving_root is not None and root_data is not None:
        derived = classify_color_type(moving_root, space_roots, root_data)
        ctype = ctype or derived
        if a_D is None:
            a_D = color_coefficient(derived, moving_root, root_data)
        if sigma is None and derived is ColorType.B:
            sigma = root_data.coroots[moving_root]
        elif sigma is None and derived is ColorType.TWO_A:
            half = [Fraction(c, 2) for c in root_data.coroots[moving_root]]
            if not lt.is_integral(half):
                raise InvalidRootData(f"color {name}: half coroot {half} is not in N")
            sigma = lt.as_int_vector(half)
    if sigma is None:
        raise InvalidRootData(f"color {name}: image sigma(D) must be given")
    if ctype is None:
        ctype = ColorType.A if a_D == 1 else ColorType.B
    if a_D is None:
        a_D = color_coefficient(ctype)
    return Color(name, tuple(int(c) for c in sigma), ctype, int(a_D), moving_root)


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    pointer: str = ""


def validate_space(space: SphericalSpace) -> list[Violation]:
    """All violated invariants of a spherical-space datum (empty when valid)."""
    out: list[Violation] = []
    r = space.rank
    V = space.valuation_cone
    if V.n != r:
        out.append(Violation("rank", f"valuation cone lives in dimension {V.n}, rank is {r}", "/space/valuation_cone"))
        return out
    roots = space.spherical_roots
    if any(len(g) != r for g in roots):
        out.append(Violation("rank", "spherical root of wrong length", "/space/spherical_roots"))
        return out
    if roots and lt.rank(roots) != len(roots):
        out.append(Violation("spherical roots", "spherical roots are linearly dependent (-V^dual must be simplicial)",
                             "/space/spherical_roots"))
    expected = Cone.from_inequalities([tuple(-c for c in g) for g in roots], r)
    if expected != V:
        out.append(Violation("valuation cone / spherical roots mismatch",
                             f"valuation cone {V!r} is not cut out by the spherical roots", "/space/valuation_cone"))
    if V.dim != r:
        out.append(Violation("valuation cone", "valuation cone must be full-dimensional", "/space/valuation_cone"))

    rd = space.root_data
    if rd is not None:
        for p in rd.check():
            out.append(Violation("root data", p, "/space/root_data"))
        if any(len(c) != r for c in rd.coroots) or any(s is not None and len(s) != r for s in rd.simple_roots):
            out.append(Violation("root data", "coroots / simple roots must have length equal to the rank",
                                 "/space/root_data"))
            rd = None

    names = set()
    for k, col in enumerate(space.colors):
        ptr = f"/space/colors/{k}"
        if col.name in names:
            out.append(Violation("color name", f"duplicate color name {col.name!r}", ptr))
        names.add(col.name)
        if len(col.sigma) != r:
            out.append(Violation("rank", f"color {col.name}: image has wrong length", ptr))
            continue
        if not any(col.sigma):
            out.append(Violation("color image", f"color {col.name}: sigma(D) = 0", ptr))
        if col.a_D < 1:
            out.append(Violation("color coefficient", f"color {col.name}: a_D = {col.a_D} is not positive", ptr))
        if (col.a_D == 1) != (col.ctype in (ColorType.A, ColorType.TWO_A)):
            out.append(Violation("color coefficient", f"color {col.name}: a_D = 1 exactly for types a and 2a", ptr))
        if col.ctype is ColorType.B and col.a_D < 2:
            out.append(Violation("color coefficient", f"color {col.name}: type b requires a_D >= 2", ptr))
        if col.a_D == 1 and V.contains(col.sigma):
            out.append(Violation("a_D=1 color inside valuation cone",
                                 f"color {col.name} has a_D = 1 but sigma(D) = {col.sigma} lies in V", ptr))
        if rd is not None and col.moving_root is not None:
            out.extend(_check_against_roots(col, space, rd, ptr))
    return out


def _check_against_roots(col: Color, space: SphericalSpace, rd: RootData, ptr: str) -> list[Violation]:
    out = []
    alpha = col.moving_root
    if not 0 <= alpha < rd.n_simple:
        return [Violation("root data", f"color {col.name}: moving root {alpha} out of range", ptr)]
    try:
        ctype = classify_color_type(alpha, space.spherical_roots, rd)
    except InconsistentSphericalRoots as exc:
        return [Violation("spherical roots", str(exc), ptr)]
    if ctype is not col.ctype:
        out.append(Violation("color type", f"color {col.name}: declared type {col.ctype.value}, "
                                           f"root data gives {ctype.value}", ptr))
    try:
        a = color_coefficient(ctype, alpha, rd)
    except InvalidRootData as exc:
        return out + [Violation("root data", str(exc), ptr)]
    if a != col.a_D:
        out.append(Violation("color coefficient", f"color {col.name}: declared a_D = {col.a_D}, root data gives {a}",
                             ptr))
    coroot = rd.coroots[alpha]
    simple = rd.simple_roots[alpha]
    if ctype is ColorType.B and tuple(col.sigma) != tuple(coroot):
        out.append(Violation("color image", f"color {col.name}: type b requires sigma(D) = coroot {coroot}", ptr))
    if ctype is ColorType.TWO_A and tuple(Fraction(2 * c) for c in col.sigma) != tuple(Fraction(c) for c in coroot):
        out.append(Violation("color image", f"color {col.name}: type 2a requires sigma(D) = coroot/2", ptr))
    if ctype in (ColorType.A, ColorType.TWO_A) and simple is not None and lt.dot(simple, col.sigma) != 1:
        out.append(Violation("color image", f"color {col.name}: <alpha, sigma(D)> must be 1", ptr))
    return out
