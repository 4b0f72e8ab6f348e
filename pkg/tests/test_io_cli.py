import json
import subprocess
import sys

import pytest

from zccs import io
from zccs.cli import run_command
from zccs.expr import parse_gbf_expr
from zccs.seqgen import generate_ccc

REF48 = ["generate", "--q", "2", "--m", "3", "--n", "1", "--g", "y1*y2+y0", "--delete", "0",
       "--gamma", "1", "--primes", "3,2,2", "--widths", "2,1,1", "--h-table", "0,0,0,1"]


def test_round_trip(ref48_set, tmp_path):
    path = tmp_path / "s.json"
    io.write_codeset(ref48_set, path)
    back = io.read_codeset(path)
    assert back == ref48_set
    assert back.params.provenance == ref48_set.params.provenance
    assert [c.label for c in back.codes] == [c.label for c in ref48_set.codes]
    assert io.dumps_codeset(back) == path.read_text()


def test_malformed_documents(ref48_set, tmp_path):
    doc = io.codeset_to_dict(ref48_set)
    doc["codes"] = doc["codes"][:-1]
    with pytest.raises(io.DocumentError, match="shape"):
        io.codeset_from_dict(doc)
    doc = io.codeset_to_dict(ref48_set)
    doc["codes"][0][0][0] = 6
    with pytest.raises(io.DocumentError):
        io.codeset_from_dict(doc)
    doc = io.codeset_to_dict(ref48_set)
    doc["format_version"] = 99
    with pytest.raises(io.DocumentError):
        io.codeset_from_dict(doc)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(io.DocumentError):
        io.read_codeset(bad)


def test_csv(tmp_path):
    S = generate_ccc(parse_gbf_expr("y0*y1", 2, 2), 0, (), 0)
    path = tmp_path / "s.csv"
    io.export_csv(S, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "code,row,re0,im0,re1,im1,re2,im2,re3,im3"
    assert lines[1] == "0,0,1.0,0.0,1.0,0.0,1.0,0.0,-1.0,0.0"
    assert len(lines) == 1 + 2 * 2


def test_cli_generate_verify(tmp_path, capsys):
    out = tmp_path / "ex1.json"
    assert run_command(REF48 + ["--out", str(out)]) == 0
    assert run_command(["verify", str(out)]) == 0
    assert "optimality=optimal" in capsys.readouterr().out
    report = tmp_path / "r.json"
    assert run_command(["verify", str(out), "--engine", "float", "--fast", "--report", str(report)]) == 0
    assert json.loads(report.read_text())["passed"] is True
    assert run_command(["verify", str(out), "--zcz", "9"]) == 1
    assert run_command(["pmepr", str(out)]) == 0
    assert run_command(["pmepr", str(out), "--bound", "1.5"]) == 1
    assert run_command(["zcz-measure", str(out)]) == 0
    assert "measured ZCZ width 8" in capsys.readouterr().out
    assert run_command(["golay-scan", str(out)]) == 0
    assert run_command(["export-csv", str(out), "--out", str(tmp_path / "x.csv")]) == 0


def test_cli_corrupted_file(tmp_path):
    out = tmp_path / "ex1.json"
    assert run_command(REF48 + ["--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    doc["codes"][3][1][7] = (doc["codes"][3][1][7] + 1) % doc["sigma"]
    out.write_text(json.dumps(doc))
    assert run_command(["verify", str(out)]) == 1
    doc["codes"].pop()
    out.write_text(json.dumps(doc))
    assert run_command(["verify", str(out)]) == 1


def test_cli_usage_errors(tmp_path, capsys):
    out = str(tmp_path / "x.json")
    bad = list(REF48)
    bad[bad.index("3,2,2")] = "4"
    bad[bad.index("2,1,1")] = "2"
    assert run_command(bad + ["--out", out]) == 2
    assert "2*2" in capsys.readouterr().err
    assert run_command(["generate", "--m", "3", "--g", "y0*y1*y2", "--out", out]) == 2
    assert run_command(["generate", "--m", "2"]) == 2
    assert run_command(["verify", str(tmp_path / "missing.json")]) == 2
    assert run_command(["plan", "--length", "7", "--m", "1"]) == 2


def test_cli_auto_deletion_and_ccc(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run_command(["ccc", "--m", "3", "--n", "1", "--g", "y1*y2+y0", "--out", str(out)]) == 0
    assert "PASS" in capsys.readouterr().out
    assert io.read_codeset(out).params.M == 4
    assert run_command(["plan", "--length", "96", "--m", "3"]) == 0
    assert "2*2*3" in capsys.readouterr().out


def test_cli_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run_command(REF48 + ["--out", str(a)]) == 0
    assert run_command(REF48 + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.json"
    proc = subprocess.run([sys.executable, "-m", "zccs", *REF48, "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "zccs", "verify", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
