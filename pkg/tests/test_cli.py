import json

import pytest

from logfano.cli import main


def run(argv):
    """Exit code whether main returns it or argparse raises SystemExit."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


def run_json(argv, capsys):
    assert run(argv) == 0
    return json.loads(capsys.readouterr().out)


SCENARIO = ["--case", "over-S:2", "--r", "2", "--I", "0,inf"]


def test_compute_json(capsys):
    doc = run_json(["compute", *SCENARIO, "--beta", "1/7"], capsys)
    assert doc == {
        "results": [
            {
                "scenario": "over-S:2 r=2 I={0,inf}",
                "beta": "1/7",
                "S": "8/7",
                "A": "8/7",
                "ratio": "1",
            }
        ]
    }


def test_compute_multiple_betas_csv(capsys):
    code = run(["compute", *SCENARIO, "--beta", "1/7", "--beta", "1/100", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "scenario,beta,S,A,ratio"
    assert lines[1].endswith(",1/7,8/7,8/7,1")
    assert lines[2].endswith(",1/100,101/100,101/100,1")


def test_compute_with_expansion(capsys):
    doc = run_json(
        ["compute", "--case", "over-S:2", "--r", "1", "--I", "0", "--beta", "1/7", "--order", "2"],
        capsys,
    )
    result = doc["results"][0]
    assert result["closed_forms"]["S"] == {"num": ["4", "8", "4"], "den": ["4", "3"]}
    assert result["ratio_expansion"] == ["1", "-1/4", "1/4"]


def test_compute_decimal_note(capsys):
    doc = run_json(["compute", *SCENARIO, "--beta", "1/7", "--decimal"], capsys)
    extra = doc["results"][0]["approx_decimal"]
    assert float(extra["S"]) == pytest.approx(8 / 7)


def test_compute_deterministic_output(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    base = ["compute", *SCENARIO, "--beta", "1/7", "--order", "2"]
    assert run([*base, "--out", str(out1)]) == 0
    assert run([*base, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_compute_rejects_bad_inputs():
    assert run(["compute", *SCENARIO]) == 2  # no --beta
    assert run(["compute", *SCENARIO, "--beta", "0"]) == 2
    assert run(["compute", *SCENARIO, "--beta", "0.5"]) == 2
    assert run(["compute", *SCENARIO, "--beta", "1/7", "--order", "9"]) == 2
    assert run(["compute", "--case", "nope", "--r", "0", "--beta", "1/7"]) == 2


def test_profile_json(capsys):
    doc = run_json(["profile", *SCENARIO, "--beta", "1/7"], capsys)
    prof = doc["profiles"][0]
    assert prof["scenario"] == "over-S:2 r=2 I={0,inf}"
    assert prof["breakpoints"] == ["0", "1/7", "15/7", "16/7"]
    supports = [set(ch["support"]) for ch in prof["chambers"]]
    assert supports == [set(), {"E0", "F0"}, {"E0", "F0", "H0", "Hinf"}]


def test_profile_csv_unsupported():
    assert run(["profile", *SCENARIO, "--beta", "1/7", "--format", "csv"]) == 2


def test_expand_json(capsys):
    doc = run_json(["expand", "--case", "over-S:2", "--r", "1", "--I", "0"], capsys)
    # canonical form scales the denominator to primitive integer coefficients
    assert doc["closed_forms"]["ratio"] == {"num": ["1", "3/4"], "den": ["1", "1"]}
    assert doc["expansions"]["S"] == ["1", "5/4", "1/16"]
    assert doc["expansions"]["ratio"] == ["1", "-1/4", "1/4"]


def test_table(capsys):
    doc = run_json(["table"], capsys)
    assert len(doc["rows"]) == 7
    assert doc["rows"][2] == {
        "shape": "#I = 2, I = {0, inf}",
        "verdict": "strictly K-polystable",
    }
    assert run(["table", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "shape,verdict"
    assert len(lines) == 8


def test_toric(capsys, tmp_path):
    doc = run_json(["toric", "--beta", "1/100"], capsys)
    entry = doc["toric"][0]
    assert entry["valuation"] == [2, 1]
    assert entry["S"] == "10201/10075"
    assert len(entry["vertices"]) == 5
    corrupt = tmp_path / "fan.json"
    corrupt.write_text("][", encoding="utf-8")
    assert run(["toric", "--beta", "1/100", "--asset", str(corrupt)]) == 2


def test_git(capsys):
    doc = run_json(["git", "--I", "0,inf"], capsys)
    assert doc["multiplicities"] == [2, 2]
    assert doc["verdict"] == "strictly_semistable"
    assert doc["k_row"]["verdict"] == "strictly K-polystable"
    assert doc["concordant"] is True
    doc = run_json(["git", "--I", "1,2,3"], capsys)
    assert doc["verdict"] == "stable"
    assert doc["concordant"] is True  # k-verdict unknown counts as unchallenged


def test_reproduce_single_check(capsys):
    assert run(["reproduce", "--only", "alpha-coefficients"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] alpha-coefficients" in out
    assert "checks passed: 1/1" in out


def test_reproduce_known_open_check(capsys):
    # the two ratio-slope lines for the chain case do not match the demanded
    # values; reproduce reports that honestly with a nonzero exit
    assert run(["reproduce", "--only", "delta-ratio-bounds"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] delta-ratio-bounds" in out


def test_reproduce_unknown_id():
    assert run(["reproduce", "--only", "zzz"]) == 2


def test_reproduce_json(capsys):
    assert run(["reproduce", "--only", "git-concordance", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"] == {"git-concordance": True}
    assert all(ln["ok"] for ln in doc["lines"])
