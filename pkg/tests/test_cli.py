import json
import subprocess
import sys

import pytest

from cellcalc.cli import main
from cellcalc.formats import algebra_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


def test_info(capsys):
    code, data, _ = run_json(capsys, "info", "--builtin", "zigzag-star:2")
    assert code == 0 and data["dimension"] == 10 and data["weakly_symmetric"] is True
    assert data["vertex_order"] == ["0", "1", "2"]
    code, data, _ = run_json(capsys, "info", "--builtin", "an:2")
    assert data["nakayama_partial"] == {"1": "2"} and data["self_injective"] is False


def test_info_single_vertex_file(capsys, tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps({"vertices": ["0"], "arrows": [], "relations": []}))
    code, data, _ = run_json(capsys, "info", "--file", str(f))
    assert code == 0 and data["dimension"] == 1


def test_report_echoes_algebra_for_round_trip(capsys):
    _, data, _ = run_json(capsys, "info", "--builtin", "two-vertex-ab")
    again = algebra_from_json(data["algebra"])
    assert again.dim == 5 and again.dims == ((2, 1), (1, 1))


def test_cores(capsys):
    code, data, _ = run_json(capsys, "cores", "--builtin", "zigzag-star:2")
    assert code == 0 and data["count"] == 7
    code, data, _ = run_json(capsys, "cores", "--builtin", "two-vertex-ab", "--check", "2")
    assert code == 0 and data["is_core"] is False and data["witness"] == "2"
    code, out, _ = run(capsys, "cores", "--builtin", "two-vertex-ab", "--check", "2")
    assert out.startswith("U = {2}: no") and "witness i = 2" in out
    code, data, _ = run_json(capsys, "cores", "--builtin", "an:4")
    assert data["cores"] == []


def test_subcat_actions(capsys):
    code, out, _ = run(capsys, "subcat", "--builtin", "zigzag-star:2", "--u", "1,0", "--v", "1,0,2", "eggbox")
    assert code == 0 and "| F(0,0) | F(0,1) | F(0,2) |" in out and "| Id |" in out
    code, data, _ = run_json(capsys, "subcat", "--builtin", "zigzag-star:2", "--u", "1,0", "--v", "1,0,2", "eggbox")
    assert [len(j["rows"]) for j in data["eggbox"]["jcells"]] == [2, 1]
    assert len(data["eggbox"]["jcells"][0]["rows"][0]) == 3
    code, data, _ = run_json(capsys, "subcat", "--builtin", "zigzag-star:2", "--gens", "(1,1);(2,2)", "fiat")
    assert code == 0 and data["weakly_fiat"] is True and data["construction"] == "closure of generators"
    code, data, _ = run_json(capsys, "subcat", "--builtin", "zigzag-star:2", "--u", "1", "--v", "1,2", "cells")
    assert data["cells"]["vacuous"] == ["{F(1,2)}"]
    code, data, _ = run_json(capsys, "subcat", "--builtin", "zigzag-star:2", "--gens", "(1,1);(2,2)", "cells")
    assert "vacuous_semantics" in data["eggbox"]
    code, data, _ = run_json(capsys, "subcat", "--builtin", "zigzag-star:2", "--u", "0", "--v", "0,1", "adjoints")
    assert data["adjoints"][2] == {"label": "F(0,1)", "right": "absent: outside-subcategory (F(1,0))",
                                   "left": "absent: outside-subcategory (F(1,0))"}


def test_cellrep_and_checkrep(capsys, tmp_path):
    code, data, _ = run_json(capsys, "subcat", "--builtin", "zigzag-star:2", "--u", "1,0", "--v", "1,0,2",
                             "cellrep", "--column", "0")
    assert code == 0 and data["rep"]["matrices"]["F(1,0)"] == [[0, 0], [2, 1]]
    f = tmp_path / "rep.json"
    f.write_text(json.dumps(data["rep"]))
    code, out, _ = run(capsys, "subcat", "--builtin", "zigzag-star:2", "--u", "1,0", "--v", "1,0,2",
                       "checkrep", "--rep", str(f))
    assert code == 0 and "functorial: true" in out
    bad = data["rep"]
    bad["matrices"]["F(1,0)"] = [[0, 2], [0, 1]]
    f.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "subcat", "--builtin", "zigzag-star:2", "--u", "1,0", "--v", "1,0,2",
                       "checkrep", "--rep", str(f))
    assert code == 1 and "counterexample" in out


def test_subcat_from_file(capsys, tmp_path):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"labels": [["1", "0"], ["0", "1"]]}))
    code, data, _ = run_json(capsys, "subcat", "--builtin", "zigzag-star:2", "--subcat", str(f), "cells")
    assert code == 0
    assert data["subcategory"]["labels"] == [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "zigzag-star:3", "--u", "0", "--v", "0,1,2,3")
    assert code == 0 and "2 equivalence classes" in out
    code, out, err = run(capsys, "verify", "--builtin", "an:2", "--u", "1", "--v", "1,2")
    assert code == 2 and "NotACore" in err
    code, data, _ = run_json(capsys, "verify", "--builtin", "two-vertex-ab", "--u", "1", "--v", "1,2")
    assert code == 0 and data["report"]["pass"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "--builtin", "nope:3"],
        ["info", "--builtin", "an:x"],
        ["cores", "--builtin", "an:3", "--check", "7"],
        ["subcat", "--builtin", "an:3", "cells"],
        ["info"],
        ["verify", "--builtin", "an:2", "--u", "1"],
    ],
)
def test_input_errors_exit_3(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_bad_file_diagnostics(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"vertices": ["0"],\n "arrows": [}')
    code, _, err = run(capsys, "info", "--file", str(f))
    assert code == 3 and "line 2" in err
    f.write_text(json.dumps({"vertices": ["0"], "arrows": [{"name": "x", "from": "0", "to": "0"}],
                             "relations": []}))
    code, _, err = run(capsys, "info", "--file", str(f), "--length-bound", "5")
    assert code == 3 and "NotFiniteDimensional" in err


def test_length_bound_env(capsys, monkeypatch):
    monkeypatch.setenv("CELLCALC_LENGTH_BOUND", "2")
    assert run(capsys, "info", "--builtin", "zigzag-star:2")[0] == 3
    monkeypatch.setenv("CELLCALC_LENGTH_BOUND", "8")
    assert run(capsys, "info", "--builtin", "zigzag-star:2")[0] == 0


def test_deterministic_output(capsys):
    argv = ["subcat", "--builtin", "zigzag-star:3", "--u", "0,1", "--v", "0..3", "cells", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert all(run(capsys, *argv)[1] == first for _ in range(3))


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cellcalc", "verify", "--builtin", "zigzag-star:1", "--u", "0", "--v", "0..1"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0, proc.stderr
