"""Rational polyhedral cones in N_Q with exact arithmetic.

A :class:`Cone` is stored canonically: primitive extreme rays of its pointed
part (taken orthogonal to the lineality space), a basis of the lineality space,
irredundant facet covectors and a basis of the equations of its span. Both
representations are computed with the double description method.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from . import lattice as lt
from .errors import CoverageUndecided, NotPointed, UnboundedTruncation

DEFAULT_MAX_DEPTH = 24


def _normalize(v: Sequence) -> tuple[int, ...] | None:
    if all(c == 0 for c in v):
        return None
    return lt.primitive_of(v)


def _project_out(vectors: list[tuple[int, ...]], basis: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Orthogonally project each vector onto the complement of span(basis)."""
    if not basis:
        return vectors
    gram = [[lt.dot(a, b) for b in basis] for a in basis]
    out = []
    for v in vectors:
        coeffs = lt.solve_rational(gram, [lt.dot(v, b) for b in basis], len(basis))
        p = [Fraction(vi) - sum(c * b[j] for c, b in zip(coeffs, basis)) for j, vi in enumerate(v)]
        q = _normalize(p)
        if q is not None:
            out.append(q)
    return out


def double_description(ineqs: Iterable[Sequence[int]], n: int):
    """Generators of {x in Q^n : a.x >= 0 for every a in ineqs}.

    Returns ``(lineality, rays)``: integer bases/representatives such that the
    cone equals span(lineality) + cone(rays). Rays are extreme modulo the
    lineality space.
    """
    lin: list[tuple[int, ...]] = [tuple(r) for r in lt.identity(n)]
    rays: list[tuple[int, ...]] = []
    seen: list[tuple[int, ...]] = []
    for a in ineqs:
        a = tuple(int(c) for c in a)
        if not any(a):
            continue
        vals = [lt.dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v != 0), None)
        if k is not None:
            l0 = lin[k] if vals[k] > 0 else tuple(-c for c in lin[k])
            v0 = abs(vals[k])
            new_lin = []
            for i, l in enumerate(lin):
                if i == k:
                    continue
                w = _normalize([v0 * x - vals[i] * y for x, y in zip(l, l0)]) if vals[i] else l
                if w is not None:
                    new_lin.append(w)
            new_rays = []
            for r in rays:
                ar = lt.dot(a, r)
                w = _normalize([v0 * x - ar * y for x, y in zip(r, l0)]) if ar else r
                if w is not None:
                    new_rays.append(w)
            new_rays.append(l0)
            lin, rays = new_lin, new_rays
        else:
            pos, zero, neg = [], [], []
            for r in rays:
                v = lt.dot(a, r)
                (pos if v > 0 else neg if v < 0 else zero).append((r, v))
            target = n - len(lin) - 2
            new_rays = [r for r, _ in pos] + [r for r, _ in zero]
            if pos and neg:
                tight = {r: frozenset(i for i, s in enumerate(seen) if lt.dot(s, r) == 0) for r, _ in pos + neg}
                for (p, vp), (q, vq) in product(pos, neg):
                    common = tight[p] & tight[q]
                    if len(common) < target:
                        continue
                    if lt.rank([seen[i] for i in common]) != target:
                        continue
                    w = _normalize([vp * x - vq * y for x, y in zip(q, p)])
                    if w is not None:
                        new_rays.append(w)
            rays = list(dict.fromkeys(new_rays))
        seen.append(a)
    return lin, rays


class Cone:
    """A rational polyhedral cone, possibly with lineality (e.g. a half-space).

    Construct with ``Cone(generators, n)`` or :meth:`Cone.from_inequalities`.
    Instances are immutable and hashable by their canonical form.
    """

    def __init__(self, generators: Iterable[Sequence], n: int | None = None):
        gens = [tuple(lt.primitive_of(g)) for g in generators if any(Fraction(c) != 0 for c in g)]
        if n is None:
            if not gens:
                raise ValueError("ambient dimension required for an empty generator list")
            n = len(gens[0])
        self.n = n
        eqs, facets = double_description(gens, n)
        self.equations = tuple(lt.row_space_basis(eqs)) if eqs else ()
        facets = _project_out([tuple(f) for f in facets], list(self.equations))
        self.facets = tuple(sorted(set(facets)))
        lin, rays = double_description(
            list(self.facets) + list(self.equations) + [tuple(-c for c in e) for e in self.equations], n
        )
        self.lineality = tuple(lt.row_space_basis(lin)) if lin else ()
        rays = _project_out([tuple(r) for r in rays], list(self.lineality))
        self.rays = tuple(sorted(set(rays)))

    @classmethod
    def from_inequalities(cls, ineqs: Iterable[Sequence], n: int, equations: Iterable[Sequence] = ()) -> Cone:
        ineqs = [lt.primitive_of(a) for a in ineqs if any(Fraction(c) != 0 for c in a)]
        eqs = [lt.primitive_of(e) for e in equations if any(Fraction(c) != 0 for c in e)]
        lin, rays = double_description(ineqs + eqs + [tuple(-c for c in e) for e in eqs], n)
        return cls(list(rays) + list(lin) + [tuple(-c for c in l) for l in lin], n)

    @classmethod
    def full(cls, n: int) -> Cone:
        return cls([tuple(r) for r in lt.identity(n)] + [tuple(-x for x in r) for r in lt.identity(n)], n)

    @classmethod
    def zero(cls, n: int) -> Cone:
        return cls([], n)

    # canonical identity -------------------------------------------------

    @property
    def key(self):
        return (self.n, self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone({list(self.rays)})"

    # basic queries --------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.n - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains_line(self) -> bool:
        return bool(self.lineality)

    @property
    def is_simplicial(self) -> bool:
        return self.is_pointed and len(self.rays) == self.dim

    def generators(self) -> list[tuple[int, ...]]:
        """A generating set: rays plus both signs of the lineality basis."""
        return list(self.rays) + list(self.lineality) + [tuple(-c for c in l) for l in self.lineality]

    def contains(self, x: Sequence) -> bool:
        return all(lt.dot(e, x) == 0 for e in self.equations) and all(lt.dot(h, x) >= 0 for h in self.facets)

    def relint_contains(self, x: Sequence) -> bool:
        return all(lt.dot(e, x) == 0 for e in self.equations) and all(lt.dot(h, x) > 0 for h in self.facets)

    def contains_cone(self, other: Cone) -> bool:
        return all(self.contains(g) for g in other.generators())

    def relint_point(self) -> tuple[int, ...]:
        """An integral point of the relative interior (sum of the extreme rays)."""
        return tuple(sum(col) for col in zip(*self.rays)) if self.rays else tuple([0] * self.n)

    def intersect(self, other: Cone) -> Cone:
        return Cone.from_inequalities(
            list(self.facets) + list(other.facets), self.n, list(self.equations) + list(other.equations)
        )

    def dual(self) -> Cone:
        """The dual cone {m : <m, x> >= 0 on the cone}, as a cone in M_Q."""
        return Cone(list(self.facets) + list(self.equations) + [tuple(-c for c in e) for e in self.equations], self.n)

    def halfspace_split(self, h: Sequence) -> tuple[bool, bool]:
        """Whether the cone has points with h > 0 and with h < 0."""
        gens = self.generators()
        return any(lt.dot(h, g) > 0 for g in gens), any(lt.dot(h, g) < 0 for g in gens)

    # faces ------------------------------------------------------------------

    @cached_property
    def _face_ray_sets(self) -> list[frozenset]:
        if not self.is_pointed:
            raise NotPointed(f"{self!r} contains a line")
        top = frozenset(range(len(self.rays)))
        found = {top}
        stack = [top]
        while stack:
            S = stack.pop()
            for h in self.facets:
                T = frozenset(i for i in S if lt.dot(h, self.rays[i]) == 0)
                if T not in found:
                    found.add(T)
                    stack.append(T)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def faces(self) -> list[Cone]:
        """All faces, from {0} up to the cone itself. Requires a pointed cone."""
        return [self if len(S) == len(self.rays) else Cone([self.rays[i] for i in sorted(S)], self.n)
                for S in self._face_ray_sets]

    def face_containing(self, x: Sequence) -> Cone:
        """The smallest face containing x (x must lie in the cone)."""
        tight = [h for h in self.facets if lt.dot(h, x) == 0]
        rays = [r for r in self.rays if all(lt.dot(h, r) == 0 for h in tight)]
        return Cone(rays + [g for g in self.generators()[len(self.rays):]], self.n)

    def triangulate(self) -> list[tuple[tuple[int, ...], ...]]:
        """A pulling triangulation into simplicial cones, as tuples of rays."""
        if not self.is_pointed:
            raise NotPointed(f"{self!r} contains a line")
        if not self.rays or len(self.rays) == self.dim:
            return [self.rays]
        r0 = self.rays[0]
        out = []
        for h in self.facets:
            if lt.dot(h, r0) == 0:
                continue
            facet = Cone([r for r in self.rays if lt.dot(h, r) == 0], self.n)
            for simplex in facet.triangulate():
                out.append((r0,) + tuple(simplex))
        return out


def truncated_lattice_points(C: Cone, h: Sequence) -> list[tuple[int, ...]]:
    """All lattice points x of C with 0 < h(x) <= 1.

    h must be strictly positive on every extreme ray of a pointed cone, which
    makes {x in C : h(x) <= 1} a polytope. Each simplicial piece of a
    triangulation is scanned through its fundamental parallelepiped.
    """
    h = tuple(Fraction(c) for c in h)
    if not C.is_pointed or any(lt.dot(h, r) <= 0 for r in C.rays):
        raise UnboundedTruncation(f"h = {h} is not positive on {C!r}")
    found: set[tuple[int, ...]] = set()
    for simplex in C.triangulate():
        if not simplex:
            continue
        R = [list(r) for r in simplex]
        hr = [lt.dot(h, r) for r in R]
        RT = lt.transpose(R)
        for x in lt.saturation_coset_reps(R):
            lam = lt.solve_rational(RT, x, len(R))
            p = tuple(
                xi - sum((lam_k.numerator // lam_k.denominator) * R[k][j] for k, lam_k in enumerate(lam))
                for j, xi in enumerate(x)
            )
            _extend(p, lt.dot(h, p), 0, R, hr, found)
    return sorted(found)


def _extend(p, hp, k, R, hr, out):
    if k == len(R):
        if 0 < hp <= 1:
            out.add(tuple(p))
        return
    while hp <= 1:
        _extend(p, hp, k + 1, R, hr, out)
        p = tuple(a + b for a, b in zip(p, R[k]))
        hp += hr[k]


def max_depth_from_env() -> int:
    raw = os.environ.get("SPHERSING_MAX_DEPTH")
    return int(raw) if raw else DEFAULT_MAX_DEPTH


def covers(cones: Sequence[Cone], V: Cone, max_depth: int | None = None) -> tuple[bool, tuple | None]:
    """Decide whether V is contained in the union of ``cones``.

    Returns ``(True, None)`` or ``(False, witness)`` with a lattice point of V
    outside every cone. V is split along facet hyperplanes of a cone
    containing the current cell's interior point until every cell is covered.
    """
    if max_depth is None:
        max_depth = max_depth_from_env()
    relevant = [C for C in cones if C.intersect(V).dim == V.dim]

    def rec(cell: Cone, depth: int):
        if depth > max_depth:
            raise CoverageUndecided(f"coverage recursion exceeded depth {max_depth}")
        p = cell.relint_point()
        host = next((C for C in relevant if C.contains(p)), None)
        if host is None:
            return p
        acc = cell
        for h in host.facets:
            neg = acc.halfspace_split(h)[1]
            if not neg:
                continue
            piece = acc.intersect(Cone.from_inequalities([tuple(-c for c in h)], V.n))
            if piece.dim == V.dim:
                w = rec(piece, depth + 1)
                if w is not None:
                    return w
            acc = acc.intersect(Cone.from_inequalities([h], V.n))
        return None

    w = rec(V, 0)
    if w is None:
        return True, None
    return False, _generic_witness(w, V, cones)


def _generic_witness(p, V: Cone, cones: Sequence[Cone]):
    """Move an uncovered interior point off lower-dimensional cones."""
    if not any(C.contains(p) for C in cones):
        return p
    gens = V.generators()
    scale = 2
    for _ in range(64):
        for g in gens:
            q = tuple(scale * a + b for a, b in zip(p, g))
            if V.contains(q) and not any(C.contains(q) for C in cones):
                return q
        scale *= 2
    return p
