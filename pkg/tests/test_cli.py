import csv
import io
import json
from importlib.resources import files

import jsonschema
import pytest

from hallalg import cli

TABLES_SCHEMA = json.loads(files("hallalg").joinpath("schemas/tables.schema.json").read_text())


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps({"vertices": ["1", "2"], "arrows": [["1", "2"]]}))
    return str(path)


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_enumerate_a2(a2_file):
    code, out = run("enumerate", "--quiver", a2_file, "--q", "2", "--bound", "1,1")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 5
    assert {r.split()[0] for r in rows} == {"0", "S1", "S2", "S2+S1", "M1_1"}


def test_enumerate_json_has_aut_counts(a2_file):
    code, out = run("enumerate", "--quiver", a2_file, "--q", "3", "--format", "json")
    data = json.loads(out)
    jsonschema.validate({"classes": data}, TABLES_SCHEMA)
    assert {r["name"]: r["aut"] for r in data}["S2+S1"] == 4


def test_mul_example():
    code, out = run("mul", "--algebra", "mh-ctw", "U[S,0]", "U[S,1]")
    assert code == 0
    assert out.strip() == "U[S,1]*U[S,0] + 1·K[(1),1]"


def test_mul_json():
    code, out = run("mul", "--algebra", "dh", "--format", "json", "Z[S,0]", "Z[S,0]")
    assert code == 0
    terms = json.loads(out)
    assert len(terms) == 1 and terms[0]["word"][0]["class"] == "S+S"


def test_parse_error_cites_position(capsys):
    code, _ = run("mul", "--algebra", "mh-ctw", "U[S,0] + U[X,1]", "U[S,1]")
    assert code == 1
    assert "position 9" in capsys.readouterr().err


def test_kind_error(capsys):
    code, _ = run("mul", "--algebra", "mh-ctw", "Z[S,0]", "U[S,1]")
    assert code == 1
    assert "does not admit" in capsys.readouterr().err


@pytest.mark.parametrize("argv,needle", [
    (["enumerate", "--q", "6"], "prime"),
    (["enumerate", "--linear", "2", "--bound", "1"], "vertices"),
    (["enumerate", "--bound", "x"], "integers"),
    (["enumerate", "--degrees", "3,1"], "empty"),
    (["enumerate", "--quiver", "/no/such/file.json"], "does not exist"),
    (["mul", "--algebra", "hall", "U[S,0]", "U[S,0]"], "unknown algebra"),
    (["verify", "--trials", "0"], "trials"),
])
def test_config_errors(argv, needle, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert needle in capsys.readouterr().err


def test_capacity_error_cites_count(tmp_path, capsys):
    path = tmp_path / "wide.json"
    path.write_text(json.dumps({"vertices": ["1", "2"], "arrows": [["1", "2"]] * 13}))
    code, _ = run("enumerate", "--quiver", str(path), "--bound", "2,1")
    assert code == 1
    assert "67108864" in capsys.readouterr().err


def test_counts_tables(a2_file):
    code, out = run("counts", "--quiver", a2_file, "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, TABLES_SCHEMA)
    hall = {(r["A"], r["B"], r["C"]): r for r in data["hall"]}
    assert hall[("S1", "S2", "M1_1")]["g"] == 1
    assert hall[("S2", "S1", "M1_1")]["g"] == 0
    assert hall[("S1", "S2", "M1_1")]["ext_middle"] == 1


@pytest.mark.parametrize("table", ["hall", "gamma", "euler"])
def test_counts_text_and_csv(a2_file, table):
    assert run("counts", "--quiver", a2_file, "--table", table)[0] == 0
    code, out = run("counts", "--quiver", a2_file, "--table", table, "--format", "csv")
    assert code == 0 and len(list(csv.reader(io.StringIO(out)))) > 1


def test_export_tables_deterministic(a2_file, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("export-tables", "--quiver", a2_file, "--q", "3", "--out", str(a))[0] == 0
    assert run("export-tables", "--quiver", a2_file, "--q", "3", "--out", str(b))[0] == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    header = (a / "hall.csv").read_text().splitlines()[0]
    assert header == "A,B,C,g,ext_middle,hom_dim"


@pytest.mark.parametrize("map_name,expr,expected", [
    ("theta", "K[(1),1]*U[S,0]", "K[(1),1]*Y[S,0]"),
    ("phi", "U[S,0]", "Z[S,0]"),
    ("T", "Z[S,1]*Z[S,0]", "Z[S,2]*Z[S,1]"),
])
def test_morphism(map_name, expr, expected):
    code, out = run("morphism", "--map", map_name, expr)
    assert code == 0 and out.strip() == expected


def test_morphism_iota_and_eta():
    code, out = run("morphism", "--map", "iota", "Z[S,1]")
    assert code == 0 and "U[S,1]" in out and "K[(-1),1]" in out
    code, out = run("morphism", "--map", "eta", "U[S,0]")
    assert code == 0 and out.strip() == "Z[S,0]"


def test_verify_writes_report(tmp_path):
    report = tmp_path / "r.json"
    code, out = run("verify", "--suite", "relations", "--algebra", "mh", "--degrees", "0,1",
                    "--report", str(report), "--seed", "7")
    assert code == 0
    assert json.loads(report.read_text())["verdict"] == "pass"
    assert "verdict: pass" in out


def test_verify_nonzero_on_failure(monkeypatch):
    monkeypatch.setattr(cli, "run_suites", lambda *a, **k: {"config": {}, "reports": [], "verdict": "fail"})
    code, _ = run("verify", "--suite", "relations")
    assert code == 1


def test_cache_dir_flag(tmp_path):
    assert run("counts", "--linear", "2", "--cache-dir", str(tmp_path))[0] == 0
    assert (tmp_path / "counts.json").exists()
