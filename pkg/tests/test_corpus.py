import pytest

from genrat.corpus import check_entry, load_corpus, report_value

ENTRIES = load_corpus()


def test_corpus_covers_golden_examples_at_two_primes():
    names = {e.name for e in ENTRIES}
    for base in ("exotic-fibers", "two-dicriticals", "exotic-line"):
        assert {f"{base}-p2", f"{base}-p3"} <= names


def test_report_value_reads_nested_keys():
    js = {"theorem111": {"holds": True}, "diagnostics": {"genericFiber": {"placesAtInfinity": 2}}}
    assert report_value(js, "theorem111.holds") is True
    assert report_value(js, "generalFiberPlaces") == 2


@pytest.mark.parametrize("entry", ENTRIES, ids=[e.name for e in ENTRIES])
def test_corpus_entry(entry):
    _, mismatches = check_entry(entry)
    assert mismatches == []
