import json

import pytest

from genrat import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_exotic_fibers(capsys):
    code, out, _ = run(capsys, "analyze", "--field", "fp:2", "--poly", "X^2+Y^3")
    js = json.loads(out)
    assert code == 0
    assert js["fieldGenerator"] is False and js["goodPfg"] is True


def test_analyze_coordinate(capsys):
    code, out, _ = run(capsys, "analyze", "--field", "fp:5", "--poly", "X")
    assert code == 0 and json.loads(out)["variable"] is True


def test_analyze_exotic_line(capsys):
    code, out, _ = run(capsys, "analyze", "--field", "fp:2", "--poly", "X^4 + Y^6 + Y")
    js = json.loads(out)
    assert code == 0
    assert js["lineFibers"] is True and js["fieldGenerator"] is False


def test_analyze_writes_files(capsys, tmp_path):
    out_json, out_dot = tmp_path / "r.json", tmp_path / "r.dot"
    code, out, _ = run(capsys, "analyze", "--field", "fp:5", "--poly", "X*Y",
                       "--json", str(out_json), "--dot", str(out_dot), "--seed", "3")
    assert code == 0 and out == ""
    js = json.loads(out_json.read_text())
    assert js["diagnostics"]["genericFiber"]["seed"] == 3
    assert out_dot.read_text().startswith("digraph pencil {")


def test_analyze_is_byte_identical(capsys):
    a = run(capsys, "analyze", "--field", "fp:3", "--poly", "X^3+Y^4")[1]
    b = run(capsys, "analyze", "--field", "fp:3", "--poly", "X^3+Y^4")[1]
    assert a == b


def test_analyze_inconclusive_exit_code(capsys):
    # A tiny extension budget stops the spectrum before it can stabilize.
    code, out, err = run(capsys, "analyze", "--field", "fp:2", "--poly", "X^2+Y^3",
                         "--ext-budget", "1")
    assert code == 2
    assert "inconclusive" in err
    assert json.loads(out)["theorem111"]["holds"] is None


@pytest.mark.parametrize("argv", [
    ["analyze", "--field", "fp:4", "--poly", "X"],
    ["analyze", "--field", "fp:5", "--poly", "X+"],
    ["analyze", "--field", "fp:5", "--poly", "X", "--node-budget", "0"],
    ["analyze", "--field", "fp:5", "--poly", "X", "--unknown"],
    ["analyze", "--field", "fp:5", "--poly", "Y^2-X^9", "--node-budget", "2"],
])
def test_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "error" in err


def test_spectrum_command(capsys):
    code, out, _ = run(capsys, "spectrum", "--field", "fp:5", "--poly", "X*Y")
    assert code == 0
    assert json.loads(out) == [{"lambda": "0", "minimalField": "fp:5", "n": 2}]


def test_spectrum_of_composite_is_an_error(capsys):
    code, _, err = run(capsys, "spectrum", "--field", "fp:5", "--poly", "X^2")
    assert code == 1 and "composite" in err


def test_oracle_param_search(capsys):
    code, out, _ = run(capsys, "oracle", "param-search", "--field", "fp:3",
                       "--poly", "X^2-Y", "--lambda", "0")
    assert code == 0 and json.loads(out)["rational"] is True


def test_oracle_point_count(capsys):
    code, out, _ = run(capsys, "oracle", "point-count", "--field", "fp:5",
                       "--poly-hom", "Y^2*Z-X^3-X*Z^2-Z^3")
    assert code == 0 and json.loads(out)["genus"] == 1


def test_oracle_brute_spectrum(capsys):
    code, out, _ = run(capsys, "oracle", "brute-spectrum", "--field", "fp:5",
                       "--poly", "X*Y", "--ext", "2")
    assert code == 0 and json.loads(out) == [{"lambda": "0", "minimalField": "fp:5", "n": 2}]


def test_curve_command(capsys):
    code, out, _ = run(capsys, "curve", "--field", "fp:5", "--poly", "Y^2-X^3")
    js = json.loads(out)
    assert code == 0
    assert js["geometricGenus"] == 0
    assert js["singularPoints"][0]["multiplicitySequence"] == [2, 1, 1]


def test_corpus_subset(capsys):
    code, out, _ = run(capsys, "corpus", "--only", "hyperbola", "square", "coordinate")
    assert code == 0
    assert "3/3 corpus entries pass" in out


def test_corpus_unknown_entry_is_an_error(capsys):
    code, _, err = run(capsys, "corpus", "--only", "no-such-entry")
    assert code == 1 and "no-such-entry" in err


def test_corpus_reports_mismatch(capsys, monkeypatch):
    from genrat import corpus
    real = corpus.load_corpus

    def broken():
        entries = [e for e in real() if e.name == "hyperbola"]
        entries[0].expect["t"] = 5
        return entries

    monkeypatch.setattr(corpus, "load_corpus", broken)
    code, out, _ = run(capsys, "corpus")
    assert code == 1
    assert "FAIL" in out and "t: expected 5, got 2" in out
