import json
import subprocess
import sys

import pytest

from corpus import ROWS
from realmmp.cli import EXIT_ERROR, EXIT_OK, EXIT_UNRESOLVED, Request, main, run


def structured(capsys, *argv):
    status = main([*argv, "--format", "structured"])
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines() if l.strip()]
    return status, lines


def inline(text):
    return text.replace("\n", ";")


def test_classify(capsys):
    status, (doc,) = structured(capsys, "classify", inline(ROWS["cE7"]))
    assert status == EXIT_OK
    assert doc["case_tag"] == "cE7" and doc["verdict"] == "terminal"
    assert set(doc) >= {"verb", "input", "verdict", "case_tag", "discrepancies", "charts", "ledger"}


def test_blowup_reports_both_routes(capsys):
    status, (doc,) = structured(capsys, "blowup", "x^2+y^2+z^2+t^5", "--weights", "1,1,1,1")
    assert status == EXIT_OK
    (d,) = doc["discrepancies"]
    assert d["weight_formula"] == d["jacobian"] == "1"
    assert any(c.startswith("t-chart: x1^2 + y1^2 + z1^2 + t1^3") for c in doc["charts"])


def test_blowup_needs_weights(capsys):
    status, (doc,) = structured(capsys, "blowup", "x^2+y^2+z^2+t^5")
    assert status == EXIT_ERROR and "weights" in doc["error"]


def test_weights_line_in_the_germ_file(tmp_path, capsys):
    f = tmp_path / "g.germ"
    f.write_text("x^2+y^2+z^4+t^4\nweights (2,2,1,1)\n")
    status, (doc,) = structured(capsys, "blowup", str(f))
    assert status == EXIT_OK and doc["discrepancies"][0]["weights"] == [2, 2, 1, 1]


@pytest.mark.parametrize("text, status, verdict", [
    ("x^2+y^2+z^4+t^4", EXIT_OK, "unique"),
    (ROWS["cA1/2"], EXIT_OK, "none"),
    ("x^2+y^2+z^3+t^4\naction 1/2 (1,1,0,1)", EXIT_UNRESOLVED, "unresolved"),
])
def test_extract_exit_codes(capsys, text, status, verdict):
    got, (doc,) = structured(capsys, "extract", inline(text))
    assert got == status and doc["verdict"] == verdict and doc["status"] == status
    assert doc["citation"].startswith("case ")


def test_invalid_input_is_an_error(capsys):
    status, (doc,) = structured(capsys, "classify", "x^2+y^2+z^2+t^2+x*t;action 1/2 (1,1,1,0)")
    assert status == EXIT_ERROR
    assert "x*t" in doc["error"]


def test_parse_error_mentions_position(capsys):
    status, (doc,) = structured(capsys, "classify", "x^2+)")
    assert status == EXIT_ERROR and "line 1" in doc["error"]


def test_unknown_verb_and_missing_input():
    assert main(["frobnicate", "x"]) == EXIT_ERROR
    assert main(["classify"]) == EXIT_ERROR


def test_worst_status_wins(capsys):
    status, docs = structured(capsys, "extract", "x^2+y^2+z^4+t^4",
                              "x^2+y^2+z^3+t^4;action 1/2 (1,1,0,1)", "x^2+y^2")
    assert [d["status"] for d in docs] == [EXIT_OK, EXIT_UNRESOLVED, EXIT_ERROR]
    assert status == EXIT_ERROR


@pytest.mark.parametrize("verb, text, extra", [
    ("classify", ROWS["cD/3"], []),
    ("blowup", "x^2+y^2+z^4+t^4", ["--weights", "2,2,1,1"]),
    ("extract", "x^2+y^2+z^3+t^6", []),
    ("resolve", "x^2+y^2+z^3+t^6", []),
    ("replay", "blowcurve x^2+y^2\nblowpoint @last 1,1,1,1", []),
])
def test_text_and_structured_carry_the_same_verdict(capsys, verb, text, extra):
    ref = inline(text) if verb != "replay" else text
    _, (doc,) = structured(capsys, verb, ref, *extra)
    main([verb, ref, *extra])
    out = capsys.readouterr().out
    lines = dict(l.split(": ", 1) for l in out.splitlines()[1:] if ": " in l)
    assert lines["verdict"] == doc["verdict"]
    assert lines["case"] == doc["case_tag"]
    for d in doc["discrepancies"]:
        assert f"discrepancy: {json.dumps(d, sort_keys=True)}" in out
    if doc["ledger"] is not None:
        assert json.loads(lines["ledger"]) == doc["ledger"]


def test_resolve_two_routes(capsys):
    _, (low,) = structured(capsys, "resolve", "x^2+y^2+z^3+t^6")
    _, (high,) = structured(capsys, "resolve", "x^2+y^2+z^3+t^6", "--prefer", "high")
    assert low["ledger"]["delta"] == {"S1xS2": 1}
    assert high["ledger"]["delta"] == {"RP3": 1}


def test_corpus_batch(tmp_path, capsys):
    for k, tag in enumerate(["cA1", "cE6", "cAx/4"]):
        (tmp_path / f"{k}.germ").write_text(ROWS[tag])
    status, docs = structured(capsys, "classify", "--corpus", str(tmp_path))
    assert status == EXIT_OK and [d["case_tag"] for d in docs] == ["cA1", "cE6", "cAx/4"]


def test_request_validation():
    with pytest.raises(ValueError):
        Request("classify", [])
    with pytest.raises(ValueError):
        Request("classify", ["x"], format="yaml")
    status, (rep,) = run(Request("classify", ["x^2+y^2+z^2+t^3"]))
    assert status == EXIT_OK and rep.case_tag == "cA1"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "realmmp.cli", "extract",
                           "x^2+y^2+z^3+t^4;action 1/2 (1,1,0,1)"], capture_output=True, text=True)
    assert proc.returncode == EXIT_UNRESOLVED
    assert "verdict: unresolved" in proc.stdout
