import json
import subprocess
import sys
from types import SimpleNamespace

import pytest

from cgfpos.cli import (
    ParseError,
    dumps,
    load_report_document,
    parse_intlist,
    parse_spec,
    render_spec,
    report_document,
    resolve_config,
    run_command,
    verify_document,
)
from cgfpos.certify import certify_nonnegativity
from cgfpos.polyq import QuotientSpec


def run(*argv):
    lines = []
    code = run_command(list(argv), out=lines.append)
    return code, "\n".join(lines)


def test_parse_spec_examples():
    s = parse_spec("2,3,3,8,12/1,1,4,4,6")
    assert (s.A, s.B) == ((2, 3, 3, 8, 12), (1, 1, 4, 4, 6))
    s = parse_spec(" 4 , 5 /2")
    assert (s.A, s.B) == ((4, 5), (2,))
    s = parse_spec("/")
    assert (s.A, s.B) == ((), ())


@pytest.mark.parametrize(
    "text, position",
    [("0,2/1", 0), ("2,x/1", 2), ("2,3/1,-4", 6), ("2,3", 3), ("1/2/3", 3), ("2,,3/1", 2)],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert info.value.position == position


def test_parse_intlist_flags():
    assert parse_intlist("0,1", allow_zero=True) == [0, 1]
    assert parse_intlist("-1,2", allow_zero=True, allow_negative=True) == [-1, 2]
    with pytest.raises(ParseError):
        parse_intlist("-1")


def test_render_round_trip():
    for text in ("3,5,14/2,3,7", "255,256,257/15,16,17", "/"):
        assert render_spec(parse_spec(text)) == text
    assert render_spec(parse_spec("5,3/2")) == "3,5/2"


def test_check_exit_codes():
    code, text = run("check", "2,3,3,8,12/1,1,4,4,6")
    doc = json.loads(text)
    assert code == 0 and doc["nonnegative"] == "true"
    assert "HsopFails" in [c["kind"] for c in doc["certificates"]]
    assert run("check", "105,3,5,7/35,21,15,1")[0] == 1
    assert run("check", "4,5/2,3")[0] == 2
    assert run("check", "0,2/1")[0] == 3
    assert run("check", "10,10/1,1", "--degree-cap", "2")[0] == 4
    assert run("bogus")[0] == 3
    assert run()[0] == 3


def test_other_commands():
    code, text = run("expand", "3,4/1,2")
    assert code == 0 and json.loads(text)["coefficients"] == [1, 1, 2, 1, 1]
    code, text = run("frobenius", "3,5", "--contains", "7,8")
    doc = json.loads(text)
    assert (doc["apery"], doc["frobenius"], doc["selmer_bound"]) == ([0, 10, 5], 7, 7)
    assert doc["contains"] == {"7": False, "8": True}
    code, text = run("frobenius", "6,9")
    assert json.loads(text)["reduced"] == [2, 3]
    code, text = run("cyclotomic", "105")
    assert json.loads(text)["min_coefficient"] == -2
    assert run("cyclotomic", "0")[0] == 3
    code, text = run("hsop", "3,5,14/2,3,7")
    assert code == 1 and json.loads(text)["certificate"]["witness"] == [2, 7]
    assert run("hsop", "3,5/2")[0] == 3
    code, text = run("polya", "--cyclotomic", "6")
    assert code == 0 and json.loads(text)["k"] == 1
    code, text = run("polya", "1/1")
    assert json.loads(text)["k"] == 0
    assert run("polya")[0] == 3
    code, text = run("cgf-form", "1,1,2,1,1")
    assert code == 0 and json.loads(text)["cyclotomic_indices"] == [3, 4]
    assert run("cgf-form", "1,-1")[0] == 3


def test_document_round_trip_and_verification():
    report = certify_nonnegativity(QuotientSpec((255, 256, 257), (15, 16, 17)))
    doc = json.loads(dumps(report_document(report)))
    spec, certs = load_report_document(doc)
    assert spec == report.spec and certs == report.certificates
    assert verify_document(doc)
    doc["certificates"].append({"kind": "DivisibilityBijection", "pairing": [0, 1, 2]})
    assert not verify_document(doc)


def test_document_strictness():
    report = certify_nonnegativity(QuotientSpec((3, 4), (1, 2)))
    doc = report_document(report)
    for bad in ({**doc, "extra": 1}, {**doc, "schema": "other"}, {**doc, "notes": {"x": 1.5}}):
        with pytest.raises(ValueError):
            load_report_document(bad)
    missing = dict(doc)
    del missing["delta"]
    with pytest.raises(ValueError):
        load_report_document(missing)


def test_output_is_deterministic():
    a = run("check", "255,256,257/15,16,17")[1]
    b = run("check", "255,256,257/15,16,17")[1]
    assert a == b
    doc = json.loads(run("check", "3,4/1,2", "--timings")[1])
    assert all(isinstance(v, int) for v in doc["timings"].values())


def test_config_precedence():
    args = SimpleNamespace(degree_cap=7, hsop_distinct_cap=None, polya_kmax=None, lattice_backtrack_cap=None)
    env = {"CGF_DEGREE_CAP": "9", "CGF_POLYA_KMAX": "11"}
    cfg = resolve_config(args, env)
    assert (cfg.degree_cap, cfg.polya_kmax, cfg.hsop_distinct_cap) == (7, 11, 24)
    with pytest.raises(ParseError):
        resolve_config(SimpleNamespace(), {"CGF_DEGREE_CAP": "many"})


def test_env_cap_reaches_command(monkeypatch):
    monkeypatch.setenv("CGF_DEGREE_CAP", "2")
    assert run("expand", "10,10/1,1")[0] == 4


def test_scan_resume(tmp_path):
    out = tmp_path / "scan.jsonl"
    lines = []
    assert run_command(["scan-gk", "--n-max", "10", "--out", str(out)], out=lines.append) == 0
    first = out.read_text().splitlines()
    summary = json.loads(lines[-1])
    assert summary["instances"] == len(first) and summary["violations"] == []
    # drop the tail, leave a torn line, and resume
    out.write_text("\n".join(first[:5]) + "\n" + first[5][:10])
    lines = []
    run_command(["scan-gk", "--n-max", "10", "--out", str(out)], out=lines.append)
    assert json.loads(lines[-1])["resumed_skipped"] == 5
    resumed = [json.loads(x)["key"] for x in out.read_text().splitlines()]
    assert sorted(resumed) == sorted(json.loads(x)["key"] for x in first)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cgfpos", "expand", "3,4/1,2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["coefficients"] == [1, 1, 2, 1, 1]
