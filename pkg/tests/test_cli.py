import json
import subprocess
import sys
from importlib import resources

import jsonschema

from digitseal.cli import main
from digitseal.polyz import parse_poly
from digitseal.search import load_fixture


def schema(name):
    return json.loads(resources.files("digitseal").joinpath("data", "schemas", name).read_text())


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_newman(capsys):
    code, out, _ = run(capsys, "decide", "--newman", "x^3-x+1")
    assert code == 0
    assert "x^5+x^4+1" in out


def test_decide_json_schema(capsys):
    code, out, _ = run(capsys, "decide", "--newman", "x^3-x+1", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("verdict.schema.json"))
    assert code == 0 and doc["verdict"] == "found"
    # round trip: both printed forms re-parse to the same coefficients
    assert parse_poly(doc["witness"]) == parse_poly(doc["witness_coeffs"])


def test_decide_littlewood_none(capsys):
    code, out, _ = run(capsys, "decide", "--littlewood", "x^4+x^3-x+1", "--format", "json")
    assert code == 1
    jsonschema.validate(json.loads(out), schema("verdict.schema.json"))


def test_decide_custom(capsys):
    assert run(capsys, "decide", "--custom", "0,1", "x-2")[0] == 1


def test_witness_alias(capsys):
    code, out, _ = run(capsys, "witness", "--newman", "x^3-x+1")
    assert code == 0 and "x^5+x^4+1" in out


def test_decide_normalises_sign(capsys):
    code, out, _ = run(capsys, "decide", "--newman", "--", "-x^3+x-1")
    assert code == 0


def test_decide_rejects_non_unit_leading(capsys):
    code, _, err = run(capsys, "decide", "--newman", "2x^3+x+1")
    assert code == 3 and err


def test_decide_unimodular_unresolved(capsys):
    code, out, _ = run(capsys, "decide", "--littlewood", "x^4-x^3-x^2-x+1", "--format", "json")
    assert code == 2 and json.loads(out)["reason"] == "unimodular_unresolved"


def test_bad_input_exit_3(capsys):
    assert run(capsys, "decide", "--newman", "x^^2")[0] == 3
    assert run(capsys, "decide", "--newman", "x^2+x")[0] == 3
    assert run(capsys, "bogus")[0] == 3
    assert run(capsys, "decide", "--custom", "", "x-2")[0] == 3


def test_node_cap_exit_2(capsys):
    assert run(capsys, "decide", "--newman", "--node-cap", "3", "x^6-x^5-x^4+3x^3-x^2-x+1")[0] == 2


def test_file_input(tmp_path, capsys):
    f = tmp_path / "p.txt"
    f.write_text("x^3-x+1\n")
    assert run(capsys, "decide", "--newman", f"@{f}")[0] == 0


def test_verify_fixture(capsys):
    code, out, _ = run(capsys, "verify", "--littlewood", "(x^3-x+1)^2", "--fixture", "table_psl.txt",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("verify.schema.json"))
    assert doc["witness_degree"] == 195
    assert run(capsys, "verify", "--littlewood", "x^3-x+1", "--fixture", "table_psl.txt")[0] == 0


def test_verify_mutated_fixture(tmp_path, capsys):
    signs = "".join(load_fixture().split())
    flipped = signs[:7] + ("-" if signs[7] == "+" else "+") + signs[8:]
    f = tmp_path / "bad.txt"
    f.write_text(flipped)
    assert run(capsys, "verify", "--littlewood", "(x^3-x+1)^2", f"@{f}")[0] == 1


def test_verify_malformed(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("++-x+")
    assert run(capsys, "verify", "--littlewood", "x^3-x+1", f"@{f}")[0] == 3


def test_verify_inline_poly(capsys):
    assert run(capsys, "verify", "--newman", "x^3-x+1", "x^5+x^4+1")[0] == 0
    assert run(capsys, "verify", "--newman", "x^3-x+1", "x^5+x^4+x")[0] == 1


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "x^4+x^3-x+1", "x^2+x+1", "--format", "json", "--mahler")
    assert code == 0
    rows = json.loads(out)
    jsonschema.validate(rows, schema("classify.schema.json"))
    assert rows[0]["in_L"] == "no" and rows[0]["in_N"] == "no"
    assert rows[1]["structure"] == "C" and abs(rows[1]["mahler"] - 1) < 1e-9
    for r in rows:
        assert str(parse_poly(r["poly"])) == r["poly"]


def test_classify_family_csv(capsys):
    code, out, _ = run(capsys, "classify", "--family", "newman", "--degree", "3", "--format", "csv",
                       "--target", "littlewood")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("poly,") and len(lines) == 5


def test_tables_le4(capsys):
    code, out, _ = run(capsys, "tables", "--max-degree", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("tables.schema.json"))
    got = {r["poly"] for r in doc["listings"]["B_le4_not_L"]}
    assert got == {"x^4+x^3-x+1", "-x^4-x^3+x-1", "x^4-x^3+x+1", "-x^4+x^3-x-1"}
    recips = {r["poly"]: r["reciprocal_of"] for r in doc["listings"]["B_le4_not_L"]}
    assert sum(v is not None for v in recips.values()) == 2
    assert doc["counts"][3]["not_L"] == 4
    assert doc["delta_histogram"]


def test_tables_le3_newman_listing(capsys):
    code, out, _ = run(capsys, "tables", "--max-degree", "3", "--format", "json")
    got = {r["poly"] for r in json.loads(out)["listings"]["Bminus_le3_not_N"]}
    assert got == {"x^3+x^2-x+1", "-x^3-x^2+x-1", "x^3-x^2+x+1", "-x^3+x^2-x-1"}


def test_tables_out_dir(tmp_path, capsys):
    assert run(capsys, "tables", "--max-degree", "2", "--out", str(tmp_path))[0] == 0
    counts = (tmp_path / "counts.csv").read_text().splitlines()
    assert counts[0].startswith("degree,total,L_minus_N")
    assert (tmp_path / "partition.csv").exists() and (tmp_path / "tables.json").exists()


def test_export_graph(capsys):
    code, out, _ = run(capsys, "export-graph", "--custom", "0,1", "x-2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("graph.schema.json"))
    assert doc["vertices"] == ["1", "0"]
    code, out, _ = run(capsys, "export-graph", "--newman", "x^3-x+1")
    assert code == 0 and out.startswith("digraph")
    assert run(capsys, "export-graph", "--littlewood", "x-1")[0] == 2


def test_out_file(tmp_path, capsys):
    f = tmp_path / "v.json"
    assert run(capsys, "decide", "--newman", "x^3-x+1", "--format", "json", "--out", str(f))[0] == 0
    assert json.loads(f.read_text())["verdict"] == "found"


def test_verbose_progress_on_stderr(capsys, monkeypatch):
    import digitseal.search.engine as eng
    monkeypatch.setattr(eng, "PROGRESS_EVERY", 1)
    code, out, err = run(capsys, "-v", "decide", "--newman", "x^3-x+1", "--format", "json")
    assert code == 0 and "delta" in err
    json.loads(out)


def test_entry_point_subprocess():
    r = subprocess.run([sys.executable, "-m", "digitseal", "decide", "--newman", "x^3-x+1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "x^5+x^4+1" in r.stdout
