"""JSON report documents for classification results."""

from __future__ import annotations

from typing import Any

from .coloredfan import ColoredFan, is_complete, validate_fan
from .divisors import BWeilDivisor, cartier_data, is_ample, is_globally_generated
from .document import Document, divisor_to_json, fan_to_json, to_json_number, vec_to_json
from .errors import SphersingError
from .homspace import Violation
from .singularities import SingularityReport, classify, klt_check


def _tri(value, missing: str):
    return missing if value is None else value


def violation_to_json(v: Violation) -> dict:
    return {"rule": v.rule, "message": v.message, "pointer": v.pointer}


def certificates_to_json(rep: SingularityReport) -> dict:
    fact = rep.certificates["factoriality"]
    gor = rep.certificates["gorenstein"]
    out: dict[str, Any] = {
        "factoriality": {
            "verdict": fact.verdict,
            "failing_cone": fact.failing_cone,
            "reason": fact.reason,
            "completions": [{"cone": i, "basis": [vec_to_json(v) for v in basis]}
                            for i, basis in sorted(fact.completions.items())],
        },
        "gorenstein": {
            "verdict": gor.verdict,
            "m_C": None if gor.certificates is None else [vec_to_json(m) for m in gor.certificates],
            "failing_cone": gor.failing_cone,
        },
        "terminal_canonical": None,
    }
    term = rep.certificates.get("terminal_canonical")
    if term is not None:
        out["terminal_canonical"] = {
            "verdict": term.verdict,
            "witness": None if term.witness is None else vec_to_json(term.witness),
            "h": None if term.witness_value is None else to_json_number(term.witness_value),
            "cone": term.witness_cone,
        }
    return out


def singularity_report_to_json(rep: SingularityReport) -> dict:
    return {
        "classification": {
            "q_factorial": rep.q_factorial,
            "locally_factorial": rep.locally_factorial,
            "q_gorenstein": rep.q_gorenstein,
            "gorenstein": rep.gorenstein,
            "terminal": _tri(rep.terminal, "not_applicable"),
            "canonical": _tri(rep.canonical, "not_applicable"),
            "log_terminal": _tri(rep.log_terminal, "not_applicable"),
            "smooth": _tri(rep.smooth, "undetermined"),
            "label": rep.label,
        },
        "certificates": certificates_to_json(rep),
        "discrepancies": None if rep.discrepancies is None else [
            {"ray": vec_to_json(d.ray), "value": to_json_number(d.value)} for d in rep.discrepancies
        ],
        "klt_pair": None if rep.klt_pair is None else divisor_to_json(rep.klt_pair),
    }


def divisor_tests(fan: ColoredFan, D: BWeilDivisor) -> dict:
    cartier = bool(cartier_data(fan, D, integral=True))
    q_cartier = bool(cartier_data(fan, D, integral=False))
    out: dict[str, Any] = {"cartier": cartier, "q_cartier": q_cartier, "globally_generated": None, "ample": None,
                           "klt": None, "notes": []}
    if cartier and is_complete(fan):
        try:
            out["globally_generated"] = is_globally_generated(fan, D)
            out["ample"] = is_ample(fan, D)
        except SphersingError as exc:
            out["notes"].append(f"{exc.code}: {exc}")
    try:
        out["klt"] = klt_check(fan, D)
    except SphersingError as exc:
        out["notes"].append(f"{exc.code}: {exc}")
    return out


def fan_report(doc: Document, fan_id: str, with_resolution: bool = False) -> dict:
    from .coloredfan import decolor_and_resolve

    fan = doc.fan(fan_id)
    violations = validate_fan(fan)
    out: dict[str, Any] = {
        "valid": not violations,
        "violations": [violation_to_json(v) for v in violations],
        "complete": None,
    }
    if violations:
        return out
    out["complete"] = is_complete(fan)
    out.update(singularity_report_to_json(classify(fan)))
    tests = {name: divisor_tests(fan, D) for name, (fid, D) in doc.divisors.items() if fid == fan_id}
    if tests:
        out["divisor_tests"] = tests
    if with_resolution:
        out["resolution"] = fan_to_json(decolor_and_resolve(fan))
    return out


def report_document(doc: Document, fan_ids=None, with_resolution: bool = False) -> dict:
    ids = list(doc.fans) if fan_ids is None else list(fan_ids)
    return {"fans": {fid: fan_report(doc, fid, with_resolution) for fid in ids}}
