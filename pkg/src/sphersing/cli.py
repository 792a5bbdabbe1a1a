"""Command-line interface: ``sphersing <command> --input doc.json ...``.

Exit status: 0 on success, 1 for semantic failures (invalid fans, unknown ids,
failed corpus checks, unsupported ranks), 2 when the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .coloredfan import decolor_and_resolve, exists_morphism, validate_fan
from .corpus import REQUIRED_LABELS, run_corpus
from .document import Document, divisor_to_json, dumps, pointer, read_document, serialize_document, validate_document
from .errors import MalformedDocument, SphersingError
from .render import render_svg
from .report import report_document
from .singularities import find_klt_pair

EXIT_OK, EXIT_SEMANTIC, EXIT_PARSE = 0, 1, 2


class CommandFailed(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_valid(doc: Document, fan_id: str) -> None:
    fan = doc.fan(fan_id)
    bad = validate_fan(fan)
    if bad:
        lines = [f"fan {fan_id!r} is not a valid colored fan:"]
        lines += [f"  {pointer('fans', fan_id)}{v.pointer}: [{v.rule}] {v.message}" for v in bad]
        raise CommandFailed("\n".join(lines))


def _fan_ids(doc: Document, fan_id: str | None) -> list[str]:
    if fan_id is None:
        return list(doc.fans)
    doc.fan(fan_id)
    return [fan_id]


def cmd_validate(args) -> int:
    doc = read_document(args.input)
    violations = validate_document(doc)
    if args.json:
        print(dumps({"valid": not violations,
                     "violations": [{"rule": v.rule, "message": v.message, "pointer": v.pointer} for v in violations]}),
              end="")
    else:
        for v in violations:
            print(f"{v.pointer or '/'}: [{v.rule}] {v.message}")
        print("valid" if not violations else f"{len(violations)} violation(s)")
    return EXIT_OK if not violations else EXIT_SEMANTIC


def cmd_classify(args) -> int:
    doc = read_document(args.input)
    bad = validate_document(doc)
    if bad and any(not v.pointer.startswith("/fans/") for v in bad):
        raise CommandFailed("\n".join(f"{v.pointer}: [{v.rule}] {v.message}" for v in bad))
    ids = _fan_ids(doc, args.fan)
    rep = report_document(doc, ids, with_resolution=args.resolution)
    status = EXIT_OK if all(r["valid"] for r in rep["fans"].values()) else EXIT_SEMANTIC
    if args.json:
        _emit(dumps(rep), args.out)
        return status
    lines = []
    for fid, r in rep["fans"].items():
        if not r["valid"]:
            lines.append(f"{fid}: invalid ({r['violations'][0]['message']})")
        elif len(ids) == 1:
            lines.append(r["classification"]["label"])
        else:
            lines.append(f"{fid}: {r['classification']['label']}")
    _emit("\n".join(lines) + "\n", args.out)
    return status


def cmd_resolve(args) -> int:
    doc = read_document(args.input)
    _require_valid(doc, args.fan)
    resolved = decolor_and_resolve(doc.fan(args.fan))
    out = Document(doc.space, {f"{args.fan}-resolved": resolved})
    _emit(serialize_document(out), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    doc = read_document(args.input)
    _require_valid(doc, args.fan)
    _emit(render_svg(doc.fan(args.fan), title=args.fan), args.out)
    return EXIT_OK


def cmd_morphism(args) -> int:
    src_doc = read_document(args.input)
    dst_doc = read_document(args.to_input) if args.to_input else src_doc
    if dst_doc.space != src_doc.space:
        raise CommandFailed("source and target fans live over different spherical spaces")
    src, dst = src_doc.fan(args.src), dst_doc.fan(args.dst)
    for doc, fid in ((src_doc, args.src), (dst_doc, args.dst)):
        _require_valid(doc, fid)
    ok, assignment = exists_morphism(src, dst)
    if args.json:
        print(dumps({"exists": ok, "assignment": [[i, j] for i, j in sorted(assignment.items())]}), end="")
    else:
        print("true" if ok else "false")
        for i, j in sorted(assignment.items()):
            print(f"  {src.cones[i]!r} -> {dst.cones[j]!r}")
    return EXIT_OK


def cmd_find_klt_pair(args) -> int:
    doc = read_document(args.input)
    _require_valid(doc, args.fan)
    D = find_klt_pair(doc.fan(args.fan))
    if args.json:
        print(dumps({"exists": D is not None, "divisor": None if D is None else divisor_to_json(D)}), end="")
    elif D is None:
        print("none")
    else:
        terms = [f"{v}*X{list(x)}" for x, v in sorted(D.stable.items()) if v]
        terms += [f"{v}*{c}" for c, v in sorted(D.colors.items()) if v]
        print(" + ".join(terms) or "0")
    return EXIT_OK


def cmd_corpus(args) -> int:
    res = run_corpus(workers=args.workers)
    if args.json:
        print(dumps({
            "fans": [{"id": r.fan_id, "label": r.label, "complete": r.complete, "cones": r.n_cones} for r in res.rows],
            "arrows": [{"from": a, "to": b, "ok": ok} for a, b, ok in res.arrows],
            "labels_realized": sorted({r.label for r in res.rows}),
            "failures": res.failures,
        }), end="")
    else:
        width = max(len(r.fan_id) for r in res.rows)
        for r in res.rows:
            print(f"{r.fan_id:<{width}}  {r.n_cones:3d} cones  {r.label}")
        for a, b, ok in res.arrows:
            print(f"{a} -> {b}: {'ok' if ok else 'FAILED'}")
        realized = {r.label for r in res.rows}
        print(f"{len(realized)} distinct labels; {sum(l in realized for l in REQUIRED_LABELS)}/{len(REQUIRED_LABELS)} "
              f"required labels realized")
        for f in res.failures:
            print(f"FAIL {f}")
    return EXIT_OK if res.ok else EXIT_SEMANTIC


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sphersing", description="Singularities of spherical embeddings from colored fans.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, fan=False, fan_required=True, fmt=True, out=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True, metavar="PATH", help="JSON input document")
        if fan:
            p.add_argument("--fan", required=fan_required, metavar="ID")
        if fmt:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--json", action="store_true", help="machine-readable output")
            g.add_argument("--text", dest="json", action="store_false", help="human-readable output (default)")
        if out:
            p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the space and every fan")
    p = add("classify", cmd_classify, "classify singularities", fan=True, fan_required=False, out=True)
    p.add_argument("--resolution", action="store_true", help="include a colorless smooth resolution in the report")
    add("resolve", cmd_resolve, "colorless smooth resolution of a fan", fan=True, fmt=False, out=True)
    add("render", cmd_render, "SVG picture of a rank-2 fan", fan=True, fmt=False, out=True)
    p = add("morphism", cmd_morphism, "does an equivariant morphism exist between two fans")
    p.add_argument("--from", dest="src", required=True, metavar="ID")
    p.add_argument("--to", dest="dst", required=True, metavar="ID")
    p.add_argument("--to-input", metavar="PATH", help="document holding the target fan (default: --input)")
    add("find-klt-pair", cmd_find_klt_pair, "search a boundary D with (X, D) klt", fan=True)

    p = sub.add_parser("corpus", help="classify the bundled SL3/U corpus and check it")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    g.add_argument("--text", dest="json", action="store_false")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedDocument as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CommandFailed as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SEMANTIC
    except SphersingError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
