import csv
import io
import json
import subprocess
import sys

import pytest

from irrbase.cli import main
from irrbase.corpus import CSV_HEADER, GroupSpec, SpecError, load_corpus


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stats_pgl32(capsys):
    code, out, _ = run(capsys, "stats", "--family", "pgl", "--d", "3", "--q", "2", "--m", "1")
    assert code == 0
    rep = json.loads(out)
    s = rep["stats"]
    assert (s["n"], s["order"], s["b"]) == (7, 168, 3)
    assert 3 <= s["I"] <= 5
    assert rep["schema"] == "irrbase.report/1"


def test_stats_sym4(capsys):
    code, out, _ = run(capsys, "stats", "--family", "sym", "--degree", "4")
    s = json.loads(out)["stats"]
    assert code == 0
    assert (s["b"], s["B"], s["H"], s["I"], s["RC"]) == (3, 3, 3, 3, 2)


def test_stats_invalid_generators(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text("[[1, 2, 0], [0, 0, 1]]")
    code, out, err = run(capsys, "stats", "--gens-file", str(g))
    assert code == 1 and out == "" and "not a permutation" in err


def test_stats_explicit_generators_and_csv(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text("[[1, 0, 3, 2]]")
    csv_path = tmp_path / "row.csv"
    code, out, _ = run(capsys, "stats", "--gens-file", str(g), "--csv", str(csv_path))
    assert code == 0 and json.loads(out)["stats"]["B"] == 1
    lines = csv_path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER) and len(lines) == 2


def test_stats_budget_exhaustion(capsys, monkeypatch):
    monkeypatch.setenv("IRRBASE_NODE_CAP", "5")
    code, out, _ = run(capsys, "stats", "--family", "pgl", "--d", "3", "--q", "3")
    assert code == 2
    assert json.loads(out)["budget"]["outcome"].startswith("exhausted")


def test_stats_bad_family_parameters(capsys):
    code, _, err = run(capsys, "stats", "--family", "pgl", "--d", "3", "--q", "6")
    assert code == 1 and "error" in err
    code, _, _ = run(capsys, "stats", "--family", "pair-sum", "--d", "4", "--m", "2", "--q", "2")
    assert code == 1


def test_stats_output_is_byte_stable(capsys):
    first = run(capsys, "stats", "--family", "pair-leq", "--d", "3", "--q", "2")[1]
    second = run(capsys, "stats", "--family", "pair-leq", "--d", "3", "--q", "2")[1]
    assert first == second


def test_verify_small_grid(capsys):
    code, out, _ = run(capsys, "verify", "--d-max", "4", "--q", "2,3")
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    assert {(c["d"], c["m"], c["q"]) for c in rep["cells"]} == {
        (2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3), (4, 1, 2), (4, 1, 3), (4, 2, 2), (4, 2, 3)}


def test_verify_pgl33(capsys):
    code, out, _ = run(capsys, "verify", "--d", "3", "--m", "1", "--q", "3")
    cell = json.loads(out)["cells"][0]
    assert code == 0
    assert cell["I_lower"] == cell["I_upper"] == 5
    assert cell["checks"]["modes"]["chain"] == "ran"


def test_verify_skips_chain_over_budget(capsys):
    code, out, _ = run(capsys, "verify", "--d", "5", "--m", "2", "--q", "2")
    cell = json.loads(out)["cells"][0]
    assert code == 0
    assert cell["checks"]["modes"] == {"certificate": "ran", "chain": "skipped: budget"}


def test_verify_rejects_large_fields(capsys):
    code, _, _ = run(capsys, "verify", "--d", "2", "--q", "121")
    assert code == 1


def test_corpus_default(capsys, tmp_path):
    summary = tmp_path / "s.json"
    code, out, _ = run(capsys, "corpus", "--json", str(summary))
    assert code == 0
    table = list(csv.reader(io.StringIO(out)))
    assert table[0] == CSV_HEADER
    rows = table[1:]
    for row in rows:
        n, i = int(row[1]), int(row[6])
        assert 2 ** i < n ** 5 or n == 1
        assert row[-1] == "True"
    names = {row[0] for row in rows}
    assert {"pair-leq(3,1,2)", "pgl(3,1,2)"} <= names
    assert json.loads(summary.read_text())["all_bounds_pass"]


def test_corpus_empty(capsys, tmp_path):
    empty = tmp_path / "c.json"
    empty.write_text("[]")
    code, out, _ = run(capsys, "corpus", str(empty))
    assert code == 0 and out == ",".join(CSV_HEADER) + "\n"


def test_corpus_bad_entry_reports_index(capsys, tmp_path):
    bad = tmp_path / "c.json"
    bad.write_text('[{"family": "sym", "degree": 3}, {"family": "nope"}]')
    code, _, err = run(capsys, "corpus", str(bad))
    assert code == 1 and "entry 1" in err


def test_corpus_unreadable(capsys, tmp_path):
    code, _, err = run(capsys, "corpus", str(tmp_path / "missing.json"))
    assert code == 1


def test_group_spec_round_trip():
    for entry in ({"family": "pgl", "d": 3, "m": 1, "q": 2}, {"family": "pair-sum", "d": 3, "m": 1, "q": 2,
                  "graph": True}, {"degree": 3, "generators": [[1, 2, 0]]}):
        spec = GroupSpec.from_dict(entry)
        assert GroupSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(SpecError):
        GroupSpec.from_dict({"family": "sym"})
    with pytest.raises(SpecError):
        load_corpus('{"family": "sym"}')


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "irrbase", "stats", "--family", "cyclic", "--degree", "5"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["stats"]["order"] == 5
