import csv
import io
import json

import pytest

from qsl2hom.cli import main, run


def out_json(argv):
    code, text = run(argv + ["--format", "json"])
    return code, json.loads(text)


def test_table_zero_rows():
    code, rep = out_json(["table", "--lambda", "q^5", "--mu", "q^7", "--I", "2", "--L", "6"])
    assert code == 0
    assert {"config", "results", "stability"} <= set(rep)
    assert all(r["verdict"] == "pass" for r in rep["results"])
    assert rep["config"]["lambda"] == "q^5"


def test_table_case2_hh3_and_hh2_conflict():
    code, rep = out_json(["table", "--lambda", "q^-2", "--mu", "1", "--I", "2", "--L", "6"])
    rows = {r["name"]: r for r in rep["results"]}
    assert rows["HH_3"]["computed"] == 1 and rows["HH_3"]["verdict"] == "pass"
    assert rows["HH_2"]["computed"] == 2
    assert code == 1  # HH_2 measures 2 against the tabulated 1


def test_pair_examples():
    code, rep = out_json(["pair", "phi2", "B1(a^M b^{N+1},a)", "--M", "0", "--N", "0",
                          "--lambda", "q^-1", "--mu", "q"])
    assert code == 0 and rep["results"][0]["computed"] == "-1/q"
    code, rep = out_json(["pair", "h[a^1 b^1]", "a*b", "--lambda", "q^-1", "--mu", "q"])
    assert code == 0 and rep["results"][0]["computed"] == "1"


def test_exit_codes(capsys):
    assert main(["pair", "nosuchcochain", "a", "--lambda", "q^-1", "--mu", "q"]) == 2
    assert main(["table", "--format", "xml"]) == 2
    assert main(["verify", "nosuchsuite"]) == 2
    assert main(["probe-conjecture", "--N", "1"]) == 2
    capsys.readouterr()


def test_probe_always_exits_zero():
    code, rep = out_json(["probe-conjecture", "--N", "0", "--L", "6"])
    assert code == 0 and rep["results"]
    assert {r["verdict"] for r in rep["results"]} <= {"consistent", "inconsistent"}


def test_hc_case2():
    code, rep = out_json(["hc", "--case", "2", "--N", "0", "--L", "6"])
    rows = {r["name"]: r for r in rep["results"]}
    assert code == 0 and rows["HC_1"]["computed"] == 1
    assert rep["config"]["lambda"] == "q^-2"


def test_deterministic_json():
    argv = ["verify", "chains", "--seed", "7", "--cases", "20", "--format", "json"]
    assert run(argv) == run(argv)


def test_env_override(monkeypatch):
    monkeypatch.setenv("QSL2HOM_SEED", "11")
    monkeypatch.setenv("QSL2HOM_CASES", "5")
    code, rep = out_json(["verify", "algebra"])
    assert code == 0 and rep["config"]["seed"] == 11


def test_csv_output():
    code, text = run(["verify", "koszul", "--cases", "5", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and "verdict" in rows[0] and len(rows) > 1


@pytest.mark.parametrize("suite", ["haar", "hopf"])
def test_verify_text(suite):
    code, text = run(["verify", suite, "--cases", "10"])
    assert code == 0 and "pass" in text


def test_workers_do_not_change_output():
    argv = ["table", "--lambda", "q^-3", "--mu", "1", "--I", "2", "--L", "6", "--format", "json"]
    assert run(argv) == run(argv + ["--workers", "2"])
