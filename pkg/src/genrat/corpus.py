"""Built-in corpus of polynomials with expected report values."""

import json
from dataclasses import dataclass
from importlib import resources

from genrat.algebra.bipoly import parse_polynomial
from genrat.algebra.fields import parse_field
from genrat.classify import classify


@dataclass
class CorpusEntry:
    name: str
    field: str
    poly: str
    source: str
    expect: dict

    def polynomial(self):
        return parse_polynomial(self.poly, parse_field(self.field))


def load_corpus():
    text = resources.files("genrat").joinpath("data/corpus.json").read_text()
    return [CorpusEntry(**e) for e in json.loads(text)["entries"]]


def report_value(report_json, key):
    """Value of a dotted key in the report JSON; ``generalFiberPlaces`` is read from diagnostics."""
    if key == "generalFiberPlaces":
        gen = report_json["diagnostics"].get("genericFiber") or {}
        return gen.get("placesAtInfinity")
    cur = report_json
    for part in key.split("."):
        if cur is None:
            return None
        cur = cur.get(part)
    return cur


def check_entry(entry, config=None):
    """(report JSON, list of (key, expected, actual) mismatches)."""
    report = classify(entry.polynomial(), config, text=entry.poly).to_json()
    bad = []
    for key, want in entry.expect.items():
        got = report_value(report, key)
        if got != want:
            bad.append((key, want, got))
    return report, bad
