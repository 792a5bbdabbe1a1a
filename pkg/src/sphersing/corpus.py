"""The bundled SL3/U example corpus and its runner."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .coloredfan import exists_morphism, is_complete, validate_fan
from .document import Document, parse_document
from .singularities import classify

CORPUS_FILE = "sl3u_corpus.json"

# classification labels of the SL3/U example list that the corpus must realize
REQUIRED_LABELS = (
    "Smooth",
    "Locally factorial (and terminal singularities)",
    "Q-factorial, not Gorenstein, terminal singularities",
    "Q-factorial, Gorenstein (and canonical singularities)",
    "Not Q-factorial, Gorenstein, terminal singularities",
    "Q-Gorenstein (and log terminal singularities)",
    "Not Q-Gorenstein, there exists no klt pair",
    "Not Q-Gorenstein, there exists klt pairs",
)


def corpus_text() -> str:
    return resources.files("sphersing").joinpath("data", CORPUS_FILE).read_text()


def load_corpus() -> Document:
    return parse_document(corpus_text())


@dataclass(frozen=True)
class CorpusRow:
    fan_id: str
    label: str
    complete: bool
    n_cones: int
    problem: str = ""


@dataclass(frozen=True)
class CorpusResult:
    rows: tuple[CorpusRow, ...]
    arrows: tuple[tuple[str, str, bool], ...]
    missing_labels: tuple[str, ...]

    @property
    def failures(self) -> list[str]:
        out = [f"{r.fan_id}: {r.problem}" for r in self.rows if r.problem]
        out += [f"arrow {a} -> {b} is not an equivariant morphism" for a, b, ok in self.arrows if not ok]
        out += [f"label not realized: {lab}" for lab in self.missing_labels]
        return out

    @property
    def ok(self) -> bool:
        return not self.failures


def _row(doc: Document, fan_id: str) -> CorpusRow:
    fan = doc.fans[fan_id]
    violations = validate_fan(fan)
    if violations:
        return CorpusRow(fan_id, "", False, len(fan.cones), f"invalid fan: {violations[0].message}")
    label = classify(fan).label
    expected = doc.labels.get(fan_id)
    problem = "" if expected in (None, label) else f"expected {expected!r}, got {label!r}"
    return CorpusRow(fan_id, label, is_complete(fan), len(fan.cones), problem)


def run_corpus(doc: Document | None = None, workers: int = 1) -> CorpusResult:
    doc = doc or load_corpus()
    ids = list(doc.fans)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(lambda i: _row(doc, i), ids))
    else:
        rows = [_row(doc, i) for i in ids]
    arrows = tuple((a, b, exists_morphism(doc.fans[a], doc.fans[b])[0]) for a, b in doc.morphisms)
    realized = {r.label for r in rows}
    missing = tuple(lab for lab in REQUIRED_LABELS if lab not in realized)
    return CorpusResult(tuple(rows), arrows, missing)
