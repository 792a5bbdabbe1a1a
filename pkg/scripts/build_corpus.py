"""Build the bundled SL3/U corpus: one complete fan per classification label, plus morphism arrows.

Each fan is a hand-picked "interesting" colored cone (or a few) completed by
smooth colorless cones, so that the label is decided by the interesting part.

    python3 scripts/build_corpus.py            # rewrite src/sphersing/data/sl3u_corpus.json
    python3 scripts/build_corpus.py --check    # only print labels
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

from sphersing import lattice as lt
from sphersing.coloredfan import ColoredCone, ColoredFan, _unimodular_refinement, exists_morphism, is_complete, validate_fan
from sphersing.document import Document, parse_document, serialize_document
from sphersing.singularities import classify

OUT = Path(__file__).resolve().parents[1] / "src" / "sphersing" / "data" / "sl3u_corpus.json"

SPACE = """
{
  "space": {
    "rank": 2,
    "valuation_cone": "full",
    "spherical_roots": [],
    "root_data": {"cartan": [[2, -1], [-1, 2]], "positive_roots": [[1, 0], [0, 1], [1, 1]], "parabolic_set": [0, 1]},
    "colors": [{"name": "D_alpha", "moving_root": 0}, {"name": "D_beta", "moving_root": 1}]
  }
}
"""

# fan id -> maximal cones (rays, colors) before completion
SEEDS = {
    "p2": [([(1, 0), (0, 1)], []), ([(0, 1), (-1, -1)], []), ([(-1, -1), (1, 0)], [])],
    "p2-blowup": [([(1, 0), (1, 1)], []), ([(1, 1), (0, 1)], []), ([(0, 1), (-1, -1)], []), ([(-1, -1), (1, 0)], [])],
    "three-colored": [([], ["D_alpha", "D_beta"]), ([(-1, -1)], ["D_beta"]), ([(-1, -1)], ["D_alpha"])],
    "qf-terminal": [([(-1, 2)], ["D_alpha"]), ([(-1, 2), (0, -1)], []), ([(0, -1)], ["D_alpha"])],
    "qf-log-terminal": [([(1, 0), (2, 5)], [])],
    "qf-gorenstein-canonical": [([(1, 0), (1, 2)], [])],
    "nqf-gorenstein-terminal": [([(0, 1), (1, -1)], ["D_alpha"])],
    "qg-log-terminal": [([(-2, 1), (6, -1)], ["D_beta"])],
    "qg-terminal": [([(-1, 0), (1, 1)], ["D_beta"]), ([(-3, -2)], ["D_alpha"])],
    "nqg-no-klt": [([(2, -1), (-1, 2)], ["D_alpha", "D_beta"])],
    "nqg-klt": [([(2, -1), (0, 1)], ["D_alpha", "D_beta"])],
}


def _angle(v) -> float:
    return math.atan2(v[1], v[0]) % (2 * math.pi)


def _sectors(a, b) -> list:
    """Split the counter-clockwise sector from a to b into strictly convex pieces."""
    gap = (_angle(b) - _angle(a)) % (2 * math.pi) or 2 * math.pi
    if gap < math.pi - 1e-9:
        return [(a, b)]
    s = (a[0] + b[0], a[1] + b[1])
    mid = lt.primitive_of((-s[0], -s[1])) if any(s) and gap > math.pi + 1e-9 else lt.primitive_of((-a[1], a[0]))
    return _sectors(a, mid) + _sectors(mid, b)


def complete_rank2(fan: ColoredFan) -> ColoredFan:
    """Fill the uncovered sectors of a rank-2 fan with unimodular cones.

    A new cone keeps the colors of the fan whose image spans one of its rays,
    since a ray cannot be colored in one cone and colorless in a neighbour.
    """
    space = fan.space
    used = {lt.primitive_of(space.sigma(c)): c for c in sorted(fan.colors)}
    rays = sorted({r for c in fan.cones for r in c.cone.rays}, key=_angle)
    covered = {frozenset(c.cone.rays) for c in fan.cones if c.cone.dim == 2}
    extra = []
    for a, b in zip(rays, rays[1:] + rays[:1]):
        if frozenset((a, b)) in covered and a[0] * b[1] - a[1] * b[0] > 0:
            continue
        for s in _unimodular_refinement(_sectors(a, b)):
            extra.append(ColoredCone.build(s, [used[r] for r in s if r in used], space))
    return ColoredFan.from_maximal(space, list(fan.cones) + extra, fan.name)


def build() -> Document:
    doc = parse_document(SPACE)
    space = doc.space
    for fan_id, cones in SEEDS.items():
        fan = ColoredFan.build(space, cones, fan_id)
        if not is_complete(fan):
            fan = complete_rank2(fan)
        bad = validate_fan(fan)
        assert not bad, (fan_id, bad)
        assert is_complete(fan), fan_id
        doc.fans[fan_id] = fan
        doc.labels[fan_id] = classify(fan).label
    for a in doc.fans:
        for b in doc.fans:
            if a != b and exists_morphism(doc.fans[a], doc.fans[b])[0]:
                doc.morphisms.append((a, b))
    return doc


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    doc = build()
    for fan_id, fan in doc.fans.items():
        print(f"{fan_id:26s} {len(fan.cones):3d} cones  {doc.labels[fan_id]}")
    for a, b in doc.morphisms:
        print(f"  {a} -> {b}")
    if not args.check:
        OUT.write_text(serialize_document(doc))
        print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
