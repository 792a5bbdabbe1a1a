"""Colored cones and colored fans over a fixed spherical space.

A valid :class:`ColoredFan` stands for one G/H-embedding; nothing
group-theoretic is materialized. Fans are stored by their maximal colored
cones and faces are derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import lattice as lt
from .cones import Cone, covers
from .homspace import SphericalSpace, Violation


@dataclass(frozen=True)
class ColoredCone:
    cone: Cone
    colors: frozenset[str] = frozenset()

    @classmethod
    def build(cls, rays: Iterable[Sequence[int]], colors: Iterable[str], space: SphericalSpace) -> ColoredCone:
        """Cone generated by ``rays`` together with the images of ``colors``."""
        colors = frozenset(colors)
        gens = [tuple(r) for r in rays] + [space.sigma(c) for c in sorted(colors)]
        return cls(Cone(gens, space.rank), colors)

    @property
    def key(self):
        return (self.cone.key, tuple(sorted(self.colors)))

    def colored_rays(self, space: SphericalSpace) -> set[tuple[int, ...]]:
        return {lt.primitive_of(space.sigma(c)) for c in self.colors if any(space.sigma(c))}

    def colorless_rays(self, space: SphericalSpace) -> list[tuple[int, ...]]:
        """Primitive generators of the edges not spanned by a color of the cone."""
        colored = self.colored_rays(space)
        return [r for r in self.cone.rays if r not in colored]

    def __repr__(self):
        return f"ColoredCone({list(self.cone.rays)}, {sorted(self.colors)})"


def relint_meets(cone: Cone, V: Cone) -> bool:
    if V.contains(cone.relint_point()):
        return True
    return cone.relint_contains(cone.intersect(V).relint_point())


def colored_cone_violations(cc: ColoredCone, space: SphericalSpace) -> list[str]:
    """Reasons why ``cc`` is not a colored cone (empty when it is one)."""
    out = []
    V = space.valuation_cone
    unknown = [c for c in cc.colors if c not in space.color_names]
    if unknown:
        return [f"unknown colors {sorted(unknown)}"]
    if cc.cone.contains_line():
        out.append("cone contains a line")
    for c in sorted(cc.colors):
        s = space.sigma(c)
        if not any(s):
            out.append(f"color {c} has sigma(D) = 0")
        elif not cc.cone.contains(s):
            out.append(f"sigma({c}) = {s} is not in the cone")
    colored = cc.colored_rays(space)
    for r in cc.cone.rays:
        if r not in colored and not V.contains(r):
            out.append(f"ray {r} is neither in the valuation cone nor the image of a color of the cone")
    if not relint_meets(cc.cone, V):
        out.append("relative interior does not meet the valuation cone")
    return out


def colored_faces(cc: ColoredCone, space: SphericalSpace) -> list[ColoredCone]:
    """Colored faces: faces whose relative interior meets V, with induced colors."""
    V = space.valuation_cone
    out = []
    for face in cc.cone.faces():
        if not relint_meets(face, V):
            continue
        out.append(ColoredCone(face, frozenset(c for c in cc.colors if face.contains(space.sigma(c)))))
    return out


@dataclass(frozen=True, eq=False)
class ColoredFan:
    space: SphericalSpace
    cones: tuple[ColoredCone, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_maximal(cls, space: SphericalSpace, cones: Iterable[ColoredCone], name: str = "") -> ColoredFan:
        cones = list(dict.fromkeys(cones))
        ray_sets = [set(c.cone.rays) for c in cones]
        by_ray: dict = {}
        for m, rays in enumerate(ray_sets):
            for r in rays:
                by_ray.setdefault(r, set()).add(m)

        def candidates(k):
            # a face of a pointed cone is spanned by a subset of its rays
            if not ray_sets[k]:
                return range(len(cones))
            return set.intersection(*(by_ray[r] for r in ray_sets[k]))

        maximal = [
            c for k, c in enumerate(cones)
            if not any(c.cone.is_pointed and cones[m].cone.is_pointed and ray_sets[k] < ray_sets[m]
                       and c.colors <= cones[m].colors and _is_colored_face(c, cones[m], space)
                       for m in candidates(k))
        ]
        maximal.sort(key=lambda c: (-c.cone.dim, c.key))
        return cls(space, tuple(maximal), name)

    @classmethod
    def build(cls, space: SphericalSpace, cones: Iterable[tuple], name: str = "") -> ColoredFan:
        """Shorthand: ``cones`` is an iterable of (rays, color names)."""
        return cls.from_maximal(space, [ColoredCone.build(r, c, space) for r, c in cones], name)

    def __eq__(self, other):
        return isinstance(other, ColoredFan) and self.space == other.space and \
            {c.key for c in self.cones} == {c.key for c in other.cones}

    def __hash__(self):
        return hash(frozenset(c.key for c in self.cones))

    @property
    def rank(self) -> int:
        return self.space.rank

    @cached_property
    def all_cones(self) -> list[ColoredCone]:
        """Every colored cone of the fan (maximal ones and all colored faces)."""
        seen = {}
        for mc in self.cones:
            for f in colored_faces(mc, self.space):
                seen.setdefault(f.key, f)
        return sorted(seen.values(), key=lambda c: (c.cone.dim, c.key))

    @cached_property
    def colors(self) -> frozenset[str]:
        """F_X: the colors appearing in some colored cone."""
        return frozenset().union(*(c.colors for c in self.cones)) if self.cones else frozenset()

    @cached_property
    def colorless_rays(self) -> list[tuple[int, ...]]:
        """Primitive generators x_i of the G-stable prime divisors.

        These are the edges of maximal cones that lie in V and carry no color of
        that cone; on a valid fan this agrees with the colorless one-dimensional
        colored faces.
        """
        V = self.space.valuation_cone
        rays = set()
        for c in self.cones:
            rays.update(r for r in c.colorless_rays(self.space) if V.contains(r))
        return sorted(rays)

    def cones_containing(self, x: Sequence) -> list[int]:
        return [i for i, c in enumerate(self.cones) if c.cone.contains(x)]

    def support_contains(self, x: Sequence) -> bool:
        return any(c.cone.contains(x) for c in self.cones)

    def __repr__(self):
        return f"ColoredFan({self.name or ''}{list(self.cones)})"


def _is_colored_face(c: ColoredCone, o: ColoredCone, space: SphericalSpace) -> bool:
    return any(f.key == c.key for f in colored_faces(o, space))


def _separated_meet(c1: Cone, c2: Cone) -> set | None:
    """Rays of c1 ∩ c2 when a facet hyperplane of one simplicial cone separates it from the other.

    Returns None when no facet separates the two, or when the candidate
    intersection is not spanned by common rays; callers then fall back to the
    exact intersection.
    """
    for a, b in ((c1, c2), (c2, c1)):
        a_rays = set(a.rays)
        for h in a.facets:
            vals = [sum(x * y for x, y in zip(h, r)) for r in b.rays]
            if all(v <= 0 for v in vals):
                meet = {r for r, v in zip(b.rays, vals) if v == 0}
                # b ∩ {h = 0} is the face spanned by meet; inside a, it is a face of a
                if meet <= a_rays:
                    return meet
    return None


def _face_colors(cc: ColoredCone, rays: set, space: SphericalSpace) -> frozenset:
    face = Cone(sorted(rays), space.rank)
    return frozenset(d for d in cc.colors if face.contains(space.sigma(d)))


def validate_fan(fan: ColoredFan) -> list[Violation]:
    """Violated colored-fan axioms; empty iff the fan is valid."""
    space = fan.space
    out = []
    for i, mc in enumerate(fan.cones):
        if mc.cone.n != space.rank:
            out.append(Violation("rank", f"cone {i} lives in the wrong dimension", f"/maximal_cones/{i}"))
            continue
        for msg in colored_cone_violations(mc, space):
            out.append(Violation("colored cone", msg, f"/maximal_cones/{i}"))
    if out:
        return out
    # at most one colored cone has a given point of V in its relative interior;
    # checking the relative-interior point of each pairwise intersection with V suffices
    V = space.valuation_cone
    quick = [c.cone.is_simplicial and all(V.contains(r) for r in c.cone.rays) for c in fan.cones]
    for (i, c1), (j, c2) in combinations(enumerate(fan.cones), 2):
        if quick[i] and quick[j]:
            meet = _separated_meet(c1.cone, c2.cone)
            if meet is not None:
                if (c1.colors or c2.colors) and _face_colors(c1, meet, space) != _face_colors(c2, meet, space):
                    out.append(Violation("fan", f"the common face spanned by {sorted(meet)} carries different "
                                                f"colors in {c1!r} and {c2!r}", f"/maximal_cones/{i}"))
                continue
        K = c1.cone.intersect(c2.cone).intersect(V)
        p = K.relint_point()
        f1 = ColoredCone(c1.cone.face_containing(p), frozenset())
        f2 = ColoredCone(c2.cone.face_containing(p), frozenset())
        f1 = ColoredCone(f1.cone, frozenset(d for d in c1.colors if f1.cone.contains(space.sigma(d))))
        f2 = ColoredCone(f2.cone, frozenset(d for d in c2.colors if f2.cone.contains(space.sigma(d))))
        if f1.key != f2.key:
            out.append(Violation(
                "fan",
                f"point {p} of the valuation cone lies in the relative interior of two distinct colored cones "
                f"{f1!r} and {f2!r}",
                f"/maximal_cones/{i}",
            ))
    return out


def is_complete(fan: ColoredFan, max_depth: int | None = None) -> bool:
    return complete_witness(fan, max_depth) is None


def complete_witness(fan: ColoredFan, max_depth: int | None = None):
    """None if the fan covers V, else a lattice point of V outside it."""
    ok, w = covers([c.cone for c in fan.cones], fan.space.valuation_cone, max_depth)
    return None if ok else w


def exists_morphism(src: ColoredFan, dst: ColoredFan) -> tuple[bool, dict[int, int]]:
    """Whether src maps equivariantly to dst; witness maps src cones to dst cones."""
    assignment = {}
    for i, c in enumerate(src.cones):
        j = next((j for j, d in enumerate(dst.cones) if d.cone.contains_cone(c.cone) and c.colors <= d.colors), None)
        if j is None:
            return False, assignment
        assignment[i] = j
    return True, assignment


# resolution ------------------------------------------------------------------


def _multiplicity(rays: Sequence[tuple[int, ...]]) -> int:
    return lt.saturation_index(rays) if rays else 1


def _stellar(cones: list[Cone], v: tuple[int, ...], n: int) -> list[Cone]:
    out = []
    for C in cones:
        if not C.contains(v) or v in C.rays:
            out.append(C)
            continue
        for h in C.facets:
            if lt.dot(h, v) == 0:
                continue
            facet_rays = [r for r in C.rays if lt.dot(h, r) == 0]
            out.append(Cone(facet_rays + [v], n))
    return _maximal_only(out)


def _maximal_only(cones: list[Cone]) -> list[Cone]:
    uniq = list(dict.fromkeys(cones))
    return [c for c in uniq if not any(o != c and o.contains_cone(c) for o in uniq)]


def _best_interior_point(rays: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    """Nonzero point of the fundamental parallelepiped with least height, then lexicographically least."""
    R = [list(r) for r in rays]
    RT = lt.transpose(R)
    best = None
    for x in lt.saturation_coset_reps(R):
        lam = lt.solve_rational(RT, x, len(R))
        frac = [l - (l.numerator // l.denominator) for l in lam]
        if not any(frac):
            continue
        p = tuple(int(sum(f * R[k][j] for k, f in enumerate(frac))) for j in range(len(R[0])))
        key = (sum(frac), p)
        if best is None or key < best:
            best = key
    return best[1]


def _unimodular_refinement(simplices: list[tuple[tuple[int, ...], ...]]) -> list[tuple[tuple[int, ...], ...]]:
    """Star subdivisions of a simplicial fan until every cone is unimodular.

    Each step takes the least non-unimodular face (fewest rays, then
    lexicographic) over the whole fan and stars it at the lowest nonzero point
    of its fundamental parallelepiped. That point lies in the relative interior
    of the face, so the cones to split are exactly those having it as a face.
    """
    mult: dict[frozenset, int] = {}

    def m(face) -> int:
        key = frozenset(face)
        if key not in mult:
            mult[key] = _multiplicity(sorted(key))
        return mult[key]

    cones = [tuple(sorted(s)) for s in simplices]
    while True:
        bad = None
        for s in cones:
            if m(s) == 1:
                continue
            for k in range(1, len(s) + 1):
                hit = [sub for sub in combinations(s, k) if m(sub) > 1]
                if hit:
                    cand = min(hit)
                    if bad is None or (len(cand), cand) < (len(bad), bad):
                        bad = cand
                    break
        if bad is None:
            return cones
        v = _best_interior_point(bad)
        face = set(bad)
        out = []
        for s in cones:
            if not face <= set(s):
                out.append(s)
                continue
            for r in bad:
                out.append(tuple(sorted([x for x in s if x != r] + [v])))
        cones = out


def decolor_and_resolve(fan: ColoredFan) -> ColoredFan:
    """A colorless fan with unimodular cones refining ``fan`` (a smooth resolution).

    Colors are erased by intersecting every cone with V; the resulting fan is
    made simplicial and then unimodular by stellar subdivisions.
    """
    space = fan.space
    n = space.rank
    V = space.valuation_cone
    cones = _maximal_only([c.cone.intersect(V) for c in fan.cones])
    cones = [c for c in cones if c.dim > 0] or cones

    while True:
        bad = None
        for C in cones:
            if C.is_simplicial:
                continue
            for f in C.faces():
                if not f.is_simplicial and (bad is None or (f.dim, f.rays) < (bad.dim, bad.rays)):
                    bad = f
        if bad is None:
            break
        cones = _stellar(cones, lt.primitive_of(bad.relint_point()), n)

    simplices = _unimodular_refinement([C.rays for C in cones])
    cones = [Cone(rays, n) for rays in simplices]

    name = f"{fan.name}-resolved" if fan.name else ""
    kept = [ColoredCone(C) for C in cones if C.dim > 0 or len(cones) == 1]
    # star subdivisions of a fan never make one maximal cone a face of another
    kept.sort(key=lambda c: (-c.cone.dim, c.key))
    return ColoredFan(space, tuple(kept), name)
