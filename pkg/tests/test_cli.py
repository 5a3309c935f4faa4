from __future__ import annotations

import json

import pytest

from morita import io
from morita.catalog import bundled_path
from morita.cli import main


@pytest.fixture()
def bundled(tmp_path):
    def copy(name):
        dst = tmp_path / f"{name}.json"
        dst.write_text(bundled_path(name).read_text(encoding="utf-8"))
        return str(dst)
    return copy


def test_full_pipeline_exit_codes(tmp_path, capsys):
    mod = tmp_path / "z2.json"
    dual = tmp_path / "z2-dual.json"
    assert main(["gen-vecg", "--group", "Z2", "-o", str(mod)]) == 0
    assert main(["compute-dual", str(mod), "-o", str(dual)]) == 0
    assert main(["check-invertible", str(dual)]) == 0
    assert main(["verify-wha", str(mod)]) == 0
    assert main(["check-mpo", str(dual)]) == 0
    capsys.readouterr()


def test_missing_irreps_verdict(bundled, capsys):
    code = main(["check-invertible", bundled("failure-mode-1")])
    out = capsys.readouterr().out
    assert code == 2
    assert "MissingIrreps" in out
    assert "FPdim 2 != 1" in out


def test_reducible_verdict_json(bundled, capsys):
    code = main(["check-invertible", bundled("failure-mode-3"), "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 2
    assert payload["invertible"] is False
    assert payload["failure_modes"] == {"ReducibleLabels": {"2": 2.0}}
    assert payload["gram_re"][2][2] == pytest.approx(2.0, abs=1e-9)


def test_validate_flags_non_unitary_block(tmp_path, capsys):
    doc = json.loads(io.dumps(io.loads(bundled_path("Z2").read_text("utf-8"))))
    doc["f0"]["1,1,1,1|1,0,1|1,0,1"] = [2.0, 0.0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc, sort_keys=True))
    code = main(["validate", str(bad)])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out
    assert "(1, 1, 1, 1)" in out


def test_validate_json_report(bundled, capsys):
    code = main(["validate", bundled("Fib"), "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["passed"] is True
    assert set(payload["pentagons"]) == {"CCCC", "CCCM"}


def test_malformed_file_reports_line(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text("{\n  not json\n}")
    code = main(["validate", str(bad)])
    err = capsys.readouterr().err
    assert code == 1
    assert "line 2" in err


def test_check_mpo_agreement_output(bundled, capsys):
    code = main(["check-mpo", bundled("failure-mode-2")])
    out = capsys.readouterr().out
    assert code == 2
    assert "agreement: 1" in out


def test_compute_dual_deterministic(tmp_path, capsys, monkeypatch):
    mod = tmp_path / "z3.json"
    assert main(["gen-vecg", "--group", "Z3", "-o", str(mod)]) == 0
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["compute-dual", str(mod), "-o", str(out1), "--seed", "1"]) == 0
    assert main(["compute-dual", str(mod), "-o", str(out2), "--seed", "1"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    # the environment variable wins over the flag
    out3 = tmp_path / "c.json"
    monkeypatch.setenv("MORITA_SEED", "1")
    assert main(["compute-dual", str(mod), "-o", str(out3), "--seed", "42"]) == 0
    assert out1.read_bytes() == out3.read_bytes()
    capsys.readouterr()


def test_gen_vecg_from_group_file(tmp_path, capsys):
    from morita.vecg import dihedral_group_4

    gpath = tmp_path / "d4.json"
    io.save_group(dihedral_group_4(), gpath)
    out = tmp_path / "d4-mod.json"
    assert main(["gen-vecg", "--group", str(gpath), "-o", str(out)]) == 0
    data = io.load(out)
    assert data.base.rank == 8
    capsys.readouterr()


def test_report_writes_figures_and_csv(bundled, tmp_path, capsys):
    outdir = tmp_path / "report"
    code = main(["report", bundled("Z2"), "-o", str(outdir)])
    capsys.readouterr()
    assert code == 0
    names = {p.name for p in outdir.iterdir()}
    assert "report.csv" in names
    assert "residuals.png" in names
    assert "gram_matrix.png" in names
    assert "character_table.png" in names
    header = (outdir / "report.csv").read_text().splitlines()[0]
    assert header == "section,check,residual,threshold,passed"
