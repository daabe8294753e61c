import json
import math
import subprocess
import sys

from hoffman_limits.cli import main
from hoffman_limits.graph_io import graph6_decode
from hoffman_limits.linalg import lambda_min


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eigen_literal_graph6(capsys):
    code, out, _ = run(capsys, "eigen", "C~")
    doc = json.loads(out)
    assert code == 0 and doc["n"] == 4 and abs(doc["lambda_min"] + 1) < 1e-9


def test_eigen_full_exact_from_file(capsys, tmp_path):
    path = tmp_path / "c4.json"
    path.write_text(json.dumps({"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}))
    code, out, _ = run(capsys, "eigen", str(path), "--full", "--exact")
    doc = json.loads(out)
    assert code == 0 and doc["char_poly_text"] == "x^4-4x^2"
    assert [round(x, 9) for x in doc["spectrum"]] == [-2, 0, 0, 2]


def test_bad_graph6_reports_offset(capsys):
    code, _, err = run(capsys, "eigen", "C~~~~")
    assert code == 2 and "byte" in err


def test_construct_gk(capsys):
    code, out, _ = run(capsys, "construct", "--family", "gk", "--k", "3")
    doc = json.loads(out)
    G = graph6_decode(doc["graph6"])
    assert code == 0 and G.n == 18
    assert abs(lambda_min(G.adjacency_matrix()) - (-1 - math.sqrt(2))) < 1e-9


def test_construct_errors_map_to_exit_codes(capsys):
    assert run(capsys, "construct", "--family", "gkwn", "--k", "3")[0] == 2
    assert run(capsys, "construct", "--family", "gkwn", "--k", "4", "--no-repair")[0] == 3


def test_limit_sequence_and_hoffman_commands(capsys):
    code, out, _ = run(capsys, "construct", "--family", "limitseq", "--name", "HWN", "--n-max", "4")
    assert code == 0 and len(json.loads(out)["sequence"]) == 4
    code, out, _ = run(capsys, "hoffman", "catalog")
    assert code == 0 and set(json.loads(out)) == {"H2", "H3", "H8", "H9", "HWN"}
    code, out, _ = run(capsys, "hoffman", "lambda", "--name", "H8")
    assert abs(json.loads(out)["lambda_min"] + 1 + math.sqrt(2)) < 1e-9
    code, out, _ = run(capsys, "hoffman", "extend", "--name", "H2", "--n", "1")
    assert json.loads(out)["vertices"] == 3
    assert run(capsys, "hoffman", "lambda")[0] == 2
    assert run(capsys, "hoffman", "lambda", "--input", '{"n": 2, "edges": [[0, 1]], "fat": [0, 1]}')[0] == 3


def test_manifest_digests_are_stable(capsys, tmp_path):
    docs = []
    for name in ("a", "b"):
        out_dir = tmp_path / name
        assert run(capsys, "construct", "--family", "trianglefree", "--n", "3", "--out-dir", str(out_dir))[0] == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert set(manifest["outputs"]) == {"report.json", "graph.g6", "hoffman.json"}
        assert {"format_version", "tool_version", "command_line", "parameters", "started",
                "wall_time_seconds"} <= set(manifest)
        docs.append(manifest["outputs"])
    assert docs[0] == docs[1]


def test_search_budget_checkpoint_and_resume(capsys, tmp_path):
    ckpt = tmp_path / "ckpt.json"
    code, _, err = run(capsys, "search-eta3", "--max-vertices", "12", "--node-budget", "5",
                       "--checkpoint", str(ckpt))
    assert code == 4 and ckpt.exists() and "budget" in err
    code, out, _ = run(capsys, "search-eta3", "--max-vertices", "12", "--resume", str(ckpt))
    assert code == 0 and json.loads(out)["extremal_graphs"] == []


def test_search_tree_outputs(capsys, tmp_path):
    dot, tree = tmp_path / "t.dot", tmp_path / "t.json"
    code, _, _ = run(capsys, "search-eta3", "--max-vertices", "8", "--tree", str(dot), "--tree-json", str(tree))
    assert code == 0 and dot.read_text().startswith("digraph")
    assert json.loads(tree.read_text())["nodes"]


def test_config_file_and_precedence(capsys, tmp_path):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"max_vertices": 8, "phase": "1"}))
    code, out, _ = run(capsys, "--config", str(conf), "search-eta3")
    doc = json.loads(out)
    assert code == 0 and doc["complete_up_to"] == 8 and doc["phases"] == ["1"]
    code, out, _ = run(capsys, "--config", str(conf), "search-eta3", "--max-vertices", "10")
    assert json.loads(out)["complete_up_to"] == 10
    conf.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "--config", str(conf), "search-eta3")[0] == 2


def test_worker_env_var(capsys, monkeypatch):
    monkeypatch.setenv("HOFFMAN_LIMITS_WORKERS", "2")
    assert run(capsys, "search-eta3", "--max-vertices", "8")[0] == 0
    monkeypatch.setenv("HOFFMAN_LIMITS_WORKERS", "0")
    assert run(capsys, "search-eta3", "--max-vertices", "8")[0] == 2


def test_verify_subset_json(capsys):
    code, out, _ = run(capsys, "verify-paper", "--criteria", "1,10", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["failed"] == [] and [c["number"] for c in doc["criteria"]] == [1, 10]
    assert run(capsys, "verify-paper", "--criteria", "x")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hoffman_limits", "eigen", "Bg"], capture_output=True, text=True)
    assert proc.returncode == 0 and abs(json.loads(proc.stdout)["lambda_min"] + math.sqrt(2)) < 1e-9
