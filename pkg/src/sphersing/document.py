"""JSON input documents: parsing with pointer-precise diagnostics, and lossless serialization.

Integers may be given as JSON numbers or decimal strings; rationals as
integers or "p/q" strings. Serialization emits strings for integers outside
the 53-bit safe range so that other JSON consumers keep them exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any

import jsonschema

from .cones import Cone
from .coloredfan import ColoredCone, ColoredFan, validate_fan
from .divisors import BWeilDivisor
from .errors import InvalidInput, MalformedDocument, SphersingError
from .homspace import RootData, SphericalSpace, Violation, make_color, validate_space

SAFE_INT = 2**53 - 1


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    return json.loads(resources.files("sphersing").joinpath("data", name).read_text())


def pointer(*parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def to_json_number(x) -> int | str:
    x = Fraction(x)
    if x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    n = x.numerator
    return n if abs(n) <= SAFE_INT else str(n)


def vec_to_json(v) -> list:
    return [to_json_number(c) for c in v]


def _int(v) -> int:
    return int(v)


def _rat(v) -> Fraction:
    return Fraction(v) if isinstance(v, int) else Fraction(str(v))


@dataclass
class Document:
    space: SphericalSpace
    fans: dict[str, ColoredFan] = field(default_factory=dict)
    labels: dict[str, str] = field(default_factory=dict)
    divisors: dict[str, tuple[str, BWeilDivisor]] = field(default_factory=dict)
    morphisms: list[tuple[str, str]] = field(default_factory=list)

    def fan(self, fan_id: str) -> ColoredFan:
        if fan_id not in self.fans:
            raise InvalidInput(f"unknown fan id {fan_id!r}", pointer("fans", fan_id))
        return self.fans[fan_id]


# parsing -----------------------------------------------------------------------


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def check_schema(raw: Any) -> None:
    validator = jsonschema.Draft7Validator(load_schema("input.schema.json"))
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise MalformedDocument(e.message, pointer(*e.absolute_path))


def parse_space(raw: dict) -> SphericalSpace:
    r = raw["rank"]
    roots = [tuple(_rat(c) for c in g) for g in raw.get("spherical_roots", [])]
    rd = None
    if "root_data" in raw:
        rr = raw["root_data"]
        cartan = [[_int(c) for c in row] for row in rr["cartan"]]
        rd = RootData.standard(cartan, [[_int(c) for c in row] for row in rr["positive_roots"]], rr["parabolic_set"])
        if "coroots" in rr:
            rd = RootData(rd.cartan, rd.positive_roots, rd.parabolic_set,
                          tuple(tuple(_int(c) for c in row) for row in rr["coroots"]), rd.simple_roots)
        if "simple_roots" in rr:
            simple = tuple(None if s is None else tuple(_rat(c) for c in s) for s in rr["simple_roots"])
            rd = RootData(rd.cartan, rd.positive_roots, rd.parabolic_set, rd.coroots, simple)
    colors = []
    for k, c in enumerate(raw.get("colors", [])):
        try:
            colors.append(make_color(
                c["name"], roots, rd,
                sigma=[_int(x) for x in c["sigma"]] if "sigma" in c else None,
                ctype=c.get("type"),
                a_D=_int(c["a_D"]) if "a_D" in c else None,
                moving_root=c.get("moving_root"),
            ))
        except (SphersingError, IndexError) as exc:
            raise InvalidInput(str(exc), pointer("space", "colors", k)) from None
    vc = raw.get("valuation_cone")
    if vc is None:
        return SphericalSpace.from_spherical_roots(r, roots, colors, rd)
    if vc == "full":
        V = Cone.full(r)
    else:
        gens = [tuple(_int(c) for c in g) for g in vc["generators"]]
        if any(len(g) != r for g in gens):
            raise InvalidInput(f"generators must have length {r}", pointer("space", "valuation_cone", "generators"))
        V = Cone(gens, r)
    return SphericalSpace(r, V, tuple(roots), tuple(colors), rd)


def parse_fan(raw: dict, space: SphericalSpace, fan_id: str) -> ColoredFan:
    cones = []
    names = set(space.color_names)
    for i, c in enumerate(raw["maximal_cones"]):
        ptr = pointer("fans", fan_id, "maximal_cones", i)
        rays = [tuple(_int(x) for x in ray) for ray in c.get("rays", [])]
        for j, ray in enumerate(rays):
            if len(ray) != space.rank:
                raise InvalidInput(f"ray has length {len(ray)}, rank is {space.rank}", ptr + pointer("rays", j))
        for j, name in enumerate(c.get("colors", [])):
            if name not in names:
                raise InvalidInput(f"unknown color {name!r}", ptr + pointer("colors", j))
            if len(space.sigma(name)) != space.rank:
                raise InvalidInput(f"color {name!r} has an image of the wrong length", ptr + pointer("colors", j))
        cones.append(ColoredCone.build(rays, c.get("colors", []), space))
    return ColoredFan.from_maximal(space, cones, fan_id)


def parse_divisor(raw: dict, doc: Document, name: str) -> tuple[str, BWeilDivisor]:
    ptr = pointer("divisors", name)
    if raw["fan"] not in doc.fans:
        raise InvalidInput(f"unknown fan id {raw['fan']!r}", ptr + "/fan")
    stable = {}
    for j, e in enumerate(raw.get("stable", [])):
        ray = tuple(_int(x) for x in e["ray"])
        if ray not in doc.fans[raw["fan"]].colorless_rays:
            raise InvalidInput(f"{ray} is not a colorless ray of fan {raw['fan']!r}", ptr + pointer("stable", j))
        stable[ray] = _rat(e["coeff"])
    colors = {}
    for c, v in raw.get("colors", {}).items():
        if c not in doc.space.color_names:
            raise InvalidInput(f"unknown color {c!r}", ptr + pointer("colors", c))
        colors[c] = _rat(v)
    return raw["fan"], BWeilDivisor(stable, colors)


def parse_document(text: str) -> Document:
    """Parse a JSON input document.

    Raises :class:`MalformedDocument` for syntax or schema errors and
    :class:`InvalidInput` for references that cannot be resolved.
    """
    raw = load_json(text)
    check_schema(raw)
    space = parse_space(raw["space"])
    doc = Document(space)
    bad = [v for v in validate_space(space) if v.rule == "rank"]
    if bad:
        raise InvalidInput(bad[0].message, bad[0].pointer)
    for fan_id, f in raw.get("fans", {}).items():
        doc.fans[fan_id] = parse_fan(f, space, fan_id)
        if "label" in f:
            doc.labels[fan_id] = f["label"]
    for name, d in raw.get("divisors", {}).items():
        doc.divisors[name] = parse_divisor(d, doc, name)
    for k, m in enumerate(raw.get("morphisms", [])):
        for end in ("from", "to"):
            if m[end] not in doc.fans:
                raise InvalidInput(f"unknown fan id {m[end]!r}", pointer("morphisms", k, end))
        doc.morphisms.append((m["from"], m["to"]))
    return doc


def read_document(path) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def validate_document(doc: Document) -> list[Violation]:
    out = [Violation(v.rule, v.message, v.pointer) for v in validate_space(doc.space)]
    if out:
        return out
    for fan_id, fan in doc.fans.items():
        for v in validate_fan(fan):
            out.append(Violation(v.rule, v.message, pointer("fans", fan_id) + v.pointer))
    return out


# serialization ---------------------------------------------------------------


def space_to_json(space: SphericalSpace) -> dict:
    out: dict[str, Any] = {"rank": space.rank}
    V = space.valuation_cone
    out["valuation_cone"] = "full" if V == Cone.full(space.rank) else {"generators": [vec_to_json(g) for g in V.generators()]}
    out["spherical_roots"] = [vec_to_json(g) for g in space.spherical_roots]
    rd = space.root_data
    if rd is not None:
        out["root_data"] = {
            "cartan": [vec_to_json(r) for r in rd.cartan],
            "positive_roots": [vec_to_json(r) for r in rd.positive_roots],
            "parabolic_set": sorted(rd.parabolic_set),
            "coroots": [vec_to_json(r) for r in rd.coroots],
            "simple_roots": [None if s is None else vec_to_json(s) for s in rd.simple_roots],
        }
    colors = []
    for c in space.colors:
        entry = {"name": c.name, "sigma": vec_to_json(c.sigma), "type": c.ctype.value, "a_D": to_json_number(c.a_D)}
        if c.moving_root is not None:
            entry["moving_root"] = c.moving_root
        colors.append(entry)
    out["colors"] = colors
    return out


def colored_cone_to_json(cc: ColoredCone, space: SphericalSpace) -> dict:
    colored = cc.colored_rays(space)
    gens = [r for r in cc.cone.generators() if r not in colored]
    return {"rays": [vec_to_json(r) for r in gens], "colors": sorted(cc.colors)}


def fan_to_json(fan: ColoredFan, label: str | None = None) -> dict:
    out: dict[str, Any] = {"maximal_cones": [colored_cone_to_json(c, fan.space) for c in fan.cones]}
    if label is not None:
        out["label"] = label
    return out


def divisor_to_json(D: BWeilDivisor, fan_id: str | None = None) -> dict:
    out: dict[str, Any] = {} if fan_id is None else {"fan": fan_id}
    out["stable"] = [{"ray": vec_to_json(x), "coeff": to_json_number(v)} for x, v in sorted(D.stable.items())]
    out["colors"] = {c: to_json_number(v) for c, v in sorted(D.colors.items())}
    return out


def document_to_json(doc: Document) -> dict:
    out: dict[str, Any] = {"space": space_to_json(doc.space)}
    out["fans"] = {fid: fan_to_json(f, doc.labels.get(fid)) for fid, f in doc.fans.items()}
    if doc.divisors:
        out["divisors"] = {name: divisor_to_json(D, fid) for name, (fid, D) in doc.divisors.items()}
    if doc.morphisms:
        out["morphisms"] = [{"from": a, "to": b} for a, b in doc.morphisms]
    return out


_FLAT_ARRAY = re.compile(r"\[([\s\d\-\",/]*)\]")


def dumps(obj: Any) -> str:
    """Indented JSON with numeric vectors kept on one line."""
    text = json.dumps(obj, indent=2)
    return _FLAT_ARRAY.sub(lambda m: "[" + ", ".join(p.strip() for p in m.group(1).split(",") if p.strip()) + "]",
                           text) + "\n"


def serialize_document(doc: Document) -> str:
    return dumps(document_to_json(doc))
