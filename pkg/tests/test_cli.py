import json

import pytest

from casson.cli import EXIT_PARSE, EXIT_VALIDATION, ingest_csv, main
from casson.plane import polyknot_from_braid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.lstrip().startswith("{") else out


def test_v2_trefoil_all_methods(capsys):
    code, out = run(capsys, "v2", "--braid", "s1 s1 s1", "--method", "all")
    assert code == 0
    assert out["v2"] == 1 and out["agreement"]
    assert out["methods"]["gauss"]["value"] == 1
    assert out["methods"]["skein"]["value"] == 1
    assert "skipped" in out["methods"]["morse"]


def test_v2_empty_gauss(capsys):
    code, out = run(capsys, "v2", "--gauss", "")
    assert code == 0 and out["v2"] == 0


def test_parse_error_exit_code(capsys):
    assert main(["v2", "--gauss", "O1+U2"]) == EXIT_PARSE


def test_missing_input_flag(capsys):
    assert main(["v2"]) == EXIT_PARSE


def test_polyknot_input_runs_morse(tmp_path, capsys):
    path = tmp_path / "tref.json"
    path.write_text(polyknot_from_braid([1, 1, 1], closed=False).to_json())
    code, out = run(capsys, "v2", "--polyknot", str(path), "--method", "all")
    assert code == 0
    assert out["methods"]["morse"]["value"] == 1


def test_tangle_input_runs_natangle(tmp_path, capsys):
    path = tmp_path / "tref.tangle"
    path.write_text("MIN@2:u\nA@1:R\nX@1:+:o\nX@1:+:o\nX@1:+:o\nA@1:L\nMAX@2:u\n")
    code, out = run(capsys, "v2", "--tangle", str(path), "--method", "all")
    assert code == 0
    assert out["methods"]["natangle"]["value"] == 1


def test_arf_and_bound(capsys):
    code, out = run(capsys, "arf", "--braid", "1 1 1")
    assert code == 0 and out["arf"] == 1
    code, out = run(capsys, "bound", "--torus", "5")
    assert code == 0 and out["sharp"] and out["within_bound"]


def test_gen_deterministic(capsys):
    _, a = run(capsys, "gen", "--seed", "11", "--letters", "8", "--moves", "2")
    _, b = run(capsys, "gen", "--seed", "11", "--letters", "8", "--moves", "2")
    assert a["diagram"] == b["diagram"]


def test_moves_check(capsys):
    code, out = run(capsys, "moves-check", "--seed", "3", "--letters", "8",
                    "--moves", "10")
    assert code == 0 and out["ok"]


def test_tsv_format(capsys):
    code, out = run(capsys, "v2", "--torus", "3", "--format", "tsv")
    assert code == 0
    assert "v2\t1" in out


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code = main(["v2", "--braid", "1 1 1", "-o", str(path)])
    assert code == 0
    assert json.loads(path.read_text())["v2"] == 1


def test_schema_version_present(capsys):
    _, out = run(capsys, "v2", "--torus", "3")
    assert out["schema_version"] == 1


def test_batch(tmp_path, capsys):
    table = tmp_path / "t.csv"
    table.write_text("name,kind,payload\n"
                     "tref,braid,s1 s1 s1\n"
                     "bad,gauss,XYZ\n"
                     "t5,torus,5\n")
    code, out = run(capsys, "batch", str(table))
    assert code == 0
    recs = out["records"]
    assert recs[0]["v2"] == 1 and recs[0]["agreement"]
    assert "error" in recs[1]
    assert recs[2]["v2"] == 3


def test_ingest_csv_empty(tmp_path):
    table = tmp_path / "empty.csv"
    table.write_text("")
    assert ingest_csv(str(table)) == []


def test_ingest_csv_short_row(tmp_path):
    table = tmp_path / "short.csv"
    table.write_text("onlyname\n")
    recs = ingest_csv(str(table))
    assert len(recs) == 1 and "error" in recs[0]


def test_integrate(tmp_path, capsys):
    path = tmp_path / "tref.json"
    path.write_text(polyknot_from_braid([1, 1, 1], closed=False).to_json())
    code, out = run(capsys, "integrate", "--knot", str(path),
                    "--samples", "20000", "--seed", "2", "--report-variance")
    assert code == 0
    assert "std_error" in out and out["samples"] > 0


def test_integrate_bad_file(capsys):
    assert main(["integrate", "--knot", "/nonexistent.json"]) == EXIT_PARSE
