import json
import subprocess
import sys

import pytest

from frobeniuskit.cli import run
from frobeniuskit.io import decomposition_from_json, fan_from_json, ring_from_json

from conftest import DATA, load


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out.strip() else None), err


SEGRE = DATA / "segre.json"
P1 = DATA / "p1.json"


def test_clgroup(capsys):
    code, out, _ = call(capsys, "clgroup", "--ring", SEGRE)
    assert code == 0 and "class group: Z" in out
    code, data, _ = call_json(capsys, "clgroup", "--ring", DATA / "veronese.json")
    assert code == 0
    assert data["free_rank"] == 0 and data["torsion_invariants"] == ["2"]


def test_canonical(capsys):
    code, out, _ = call(capsys, "canonical", "--fan", P1)
    assert code == 0 and "deg -2" in out
    code, data, _ = call_json(capsys, "canonical", "--ring", SEGRE)
    assert data["q_gorenstein"] is False


def test_frobdec_p1(capsys):
    code, data, _ = call_json(capsys, "frobdec", "--fan", P1, "--p", 5, "--e", 1)
    assert code == 0
    assert {s["degree"]: s["multiplicity"] for s in data["summands"]} == {"0": "1", "-1": "4"}
    code, out, _ = call(capsys, "frobdec", "--fan", P1, "--p", 5, "--e", 1)
    assert "deg -1" in out and "class sum: deg -4" in out


def test_frobdec_round_trip(capsys):
    code, data, _ = call_json(capsys, "frobdec", "--ring", SEGRE, "--p", 2, "--e", 1)
    assert code == 0
    dec = decomposition_from_json(data)
    assert dec.rank == 16
    assert sorted(s.multiplicity for s in dec.summands.values()) == [1, 5, 10]
    assert dec.variety == ring_from_json(load("segre.json")).cone


def test_frobdec_range(capsys):
    code, data, _ = call_json(capsys, "frobdec", "--fan", P1, "--p", 2, "--e", "1..2")
    assert code == 0 and [d["q"] for d in data["decompositions"]] == ["2", "4"]


def test_frobdec_workers_deterministic(capsys):
    argv = ("frobdec", "--fan", DATA / "p2.json", "--p", 3, "--e", 2)
    _, serial, _ = call_json(capsys, *argv)
    _, parallel, _ = call_json(capsys, *argv, "--workers", 2)
    assert serial == parallel


def test_verify_main(capsys):
    code, out, _ = call(capsys, "verify-main", "--ring", SEGRE, "--p", 2, "--e", 1)
    assert code == 0 and "PASS [as-stated]" in out
    code, data, _ = call_json(capsys, "verify-main", "--ring", SEGRE, "--p", 2)
    assert data["report"]["pass"] is True


def test_verify_main_forced_flip_fails(capsys):
    code, out, _ = call(capsys, "verify-main", "--ring", SEGRE, "--p", 2,
                        "--orientation", "sign-flipped")
    assert code == 1 and "FAIL" in out


def test_verify_analogue(capsys):
    code, out, _ = call(capsys, "verify-analogue", "--fan", P1, "--p", 3, "--e", "1..2")
    assert code == 0 and out.count("PASS") == 2
    code, _, err = call(capsys, "verify-analogue", "--cone", DATA / "quadrant.json", "--p", 2)
    assert code == 2


def test_chern(capsys):
    code, data, _ = call_json(capsys, "chern", "--n", 2, "--p", 2, "--e", 1)
    assert code == 0
    assert data["rows"][0]["c2_decomposition"] == data["rows"][0]["c2_closed_form"] == "3"


def test_hk(capsys):
    code, data, _ = call_json(capsys, "hk", "--ring", SEGRE, "--ideal", "maximal",
                              "--p", 2, "--e", "1..2")
    assert code == 0
    assert [r["length"] for r in data["rows"]] == ["23", "397"]
    assert data["estimate"]["e_hk_estimate"] == "213/128"
    assert data["estimate"]["beta_estimate"] == "-29/64"


def test_hk_feeds_estimate(capsys, tmp_path):
    _, data, _ = call_json(capsys, "hk", "--ring", SEGRE, "--p", 2, "--e", "1..2")
    path = tmp_path / "samples.json"
    path.write_text(json.dumps(data))
    code, est, _ = call_json(capsys, "estimate", "--samples", path)
    assert code == 0
    assert est["e_hk_estimate"] == data["estimate"]["e_hk_estimate"]


def test_hk_groebner(capsys):
    code, data, _ = call_json(capsys, "hk-groebner", "--ideal", DATA / "segre_ideal_p2.json",
                              "--e", 1, "--order", "lex")
    assert code == 0 and data["rows"][0]["length"] == "23"


def test_hk_hypersurface(capsys):
    code, out, _ = call(capsys, "hk-hypersurface", "--poly", DATA / "han_monsky.json", "--e", 1)
    assert code == 0 and "339" in out


def test_estimate_inline(capsys):
    samples = {"d": 2, "p": 3, "rows": [{"e": 1, "length": 18}, {"e": 2, "length": 162}]}
    code, data, _ = call_json(capsys, "estimate", "--samples", json.dumps(samples))
    assert code == 0 and data["e_hk_estimate"] == "2" and data["beta_estimate"] == "0"


def test_corpus(capsys):
    code, data, _ = call_json(capsys, "corpus", "--seed", 7, "--count", 3, "--dims", "2,3",
                              "--primes", "2,3", "--e-max", 1)
    assert code == 0 and data["pass"] and data["orientation"] == "as-stated"
    code, data, _ = call_json(capsys, "corpus", "--count", 0)
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["frobdec", "--fan", "{not json", "--p", "2"],
    ["frobdec", "--fan", str(P1), "--p", "4"],
    ["frobdec", "--fan", str(P1), "--p", "2", "--e", "2..1"],
    ["frobdec", "--fan", str(P1), "--p", "2", "--e", "x"],
    ["frobdec", "--fan", str(P1)],
    ["clgroup", "--cone", '{"lattice_rank": 2, "rays": [[2, 0], [0, 1]]}'],
    ["hk", "--ring", str(SEGRE), "--p", "3", "--budget", "10"],
    ["hk", "--ring", str(SEGRE), "--p", "2", "--ideal", '{"generators": [[0, 0, 0, 1]]}'],
    ["estimate", "--samples", '{"rows": [{"e": 1, "q": 2, "length": 3}]}', "--dim", "2"],
    ["corpus", "--primes", "2,4"],
    ["nonsense"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2
    assert err


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("FROBENIUSKIT_BUDGET", "10")
    code, _, err = call(capsys, "frobdec", "--fan", P1, "--p", 5, "--e", 2)
    assert code == 2 and "budget" in err


def test_malformed_json_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rays": [[1, 0],\n [0 1]]}')
    code, _, err = call(capsys, "clgroup", "--cone", bad)
    assert code == 2 and "line 2" in err


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "frobeniuskit", "clgroup", "--fan", str(P1)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "class group: Z" in proc.stdout
    assert fan_from_json(load("p1.json")).class_group.describe() == "Z"
