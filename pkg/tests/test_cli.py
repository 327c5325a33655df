"""Command-line behavior: JSON/CSV shapes, certificate round-trips through
files, exit codes per failure class, config layering, and worker parity."""

import json

import pytest

from minorkit import (
    blowup_complete,
    format_certificate,
    format_edge_list,
    grid_graph,
    parse_certificate,
    path_graph,
    treewidth,
    verify_minor_model,
    verify_tree_decomposition,
)
from minorkit.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_fields_and_certificates(capsys):
    code, out, err = _run(
        capsys,
        ["compute", "--gen", "grid:2", "--params", "h,hf,hfs,hr:2,tw,bn,sep,grid,bounds"],
    )
    assert code == 0 and err == ""
    lines = out.strip().splitlines()
    assert len(lines) == 1
    rec = json.loads(lines[0])
    assert rec["graph"] == "Cr"
    assert (rec["n"], rec["m"]) == (4, 4)
    assert rec["h"] == 3
    assert rec["hf"] == "3/1" and rec["hf_status"] == "exact"
    assert rec["hf_display"] == 3.0
    assert rec["hfs"] == "2/1"
    assert rec["hr2"] == "3/1"
    assert rec["tw"] == 2
    assert rec["bn"] == 3
    assert rec["sep"] == 2
    assert rec["grid"] == 2
    assert rec["bounds_all_hold"] is True
    assert {b["name"] for b in rec["bounds"]} >= {
        "fractional_squared<=2hn",
        "m>=h_choose_2",
    }
    G = grid_graph(2)
    verify_minor_model(G, parse_certificate(rec["h_certificate"]))
    verify_tree_decomposition(G, parse_certificate(rec["tw_certificate"]))
    assert rec["bn_hitting_set"].split() == sorted(rec["bn_hitting_set"].split())


def test_compute_input_order_and_sources(capsys, tmp_path):
    g6file = tmp_path / "graphs.g6"
    g6file.write_text("# comment\nA_\n\nBw\n")
    edges = tmp_path / "p3.edges"
    edges.write_text(format_edge_list(path_graph(3)))
    code, out, _ = _run(
        capsys,
        [
            "compute",
            "--g6", "Cr",
            "--g6-file", str(g6file),
            "--edges", str(edges),
            "--gen", "cycle:5",
            "--gen", "gnp:6,1/2,3",
            "--params", "h",
        ],
    )
    assert code == 0
    got = [json.loads(ln)["graph"] for ln in out.strip().splitlines()]
    assert got[:4] == ["Cr", "A_", "Bw", "Bg"]
    assert len(got) == 6


def test_compute_capacity_becomes_error_object(capsys):
    code, out, _ = _run(
        capsys,
        ["compute", "--gen", "grid:3", "--params", "bn", "--max-visits", "1"],
    )
    assert code == 0
    rec = json.loads(out.strip())
    assert "error" in rec and "bn" not in rec
    assert rec["n"] == 9


def test_compute_usage_and_input_errors(capsys):
    assert _run(capsys, ["compute", "--gen", "grid:2"])[0] == 2  # no --params
    assert _run(capsys, ["compute", "--gen", "grid:2", "--params", "zz"])[0] == 2
    assert _run(capsys, ["compute", "--gen", "grid:2", "--params", "hr:0"])[0] == 2
    assert _run(capsys, ["compute", "--gen", "moebius:4", "--params", "h"])[0] == 2
    assert _run(capsys, ["compute", "--gen", "grid:2,2", "--params", "h"])[0] == 2
    assert _run(capsys, ["compute", "--gen", "gnp:5,1/2", "--params", "h"])[0] == 2
    assert _run(capsys, ["compute", "--params", "h"])[0] == 1  # no graphs
    assert _run(capsys, ["compute", "--g6", "B?@", "--params", "h"])[0] == 1
    assert _run(capsys, ["compute", "--g6-file", "/nonexistent", "--params", "h"])[0] == 1
    code, _, err = _run(capsys, ["compute", "--gen", "grid:2", "--params", "h:3"])
    assert code == 2 and "usage error" in err


def test_certify_each_type(capsys, tmp_path):
    G = grid_graph(2)
    cases = [
        ("h", "minor-model"),
        ("tw", "tree-decomposition"),
        ("bn", "bramble"),
        ("sep", "separation"),
        ("hf", "weighted-bramble"),
    ]
    code, out, _ = _run(
        capsys, ["compute", "--gen", "grid:2", "--params", "h,tw,bn,sep,hf"]
    )
    assert code == 0
    rec = json.loads(out.strip())
    keymap = {
        "minor-model": "h_certificate",
        "tree-decomposition": "tw_certificate",
        "bramble": "bn_certificate",
        "separation": "sep_certificate",
        "weighted-bramble": "hf_certificate",
    }
    for _, typ in cases:
        path = tmp_path / f"{typ}.cert"
        path.write_text(rec[keymap[typ]])
        code, out, _ = _run(
            capsys, ["certify", "--gen", "grid:2", "--certificate", str(path)]
        )
        assert code == 0
        res = json.loads(out.strip())
        assert res["valid"] is True and res["type"] == typ
    # tamper: the model is not a model of a different host
    path = tmp_path / "minor-model.cert"
    code, out, _ = _run(capsys, ["certify", "--gen", "path:4", "--certificate", str(path)])
    assert code == 1
    res = json.loads(out.strip())
    assert res["valid"] is False and res["reason"]


def test_certify_reports_values(capsys, tmp_path):
    path = tmp_path / "wb.cert"
    path.write_text("weighted-bramble host=2 kind=weak\n1/2 0\n1/2 0 1\n")
    code, out, _ = _run(capsys, ["certify", "--gen", "path:2", "--certificate", str(path)])
    assert code == 0
    res = json.loads(out.strip())
    assert res["value"] == "1/1" and res["value_display"] == 1.0
    path.write_text("bramble host=2 kind=weak\n0\n1\n0 1\n")
    code, out, _ = _run(capsys, ["certify", "--gen", "path:2", "--certificate", str(path)])
    assert json.loads(out.strip())["order"] == 2


def test_certify_parse_failure_and_graph_count(capsys, tmp_path):
    path = tmp_path / "bad.cert"
    path.write_text("minor-model host=4 pattern=clique:1\n1 0\n")
    code, out, _ = _run(capsys, ["certify", "--gen", "path:4", "--certificate", str(path)])
    assert code == 1
    assert "increasing" in json.loads(out.strip())["reason"]
    code, _, err = _run(
        capsys,
        ["certify", "--gen", "path:4", "--gen", "path:3", "--certificate", str(path)],
    )
    assert code == 2 and "exactly one graph" in err
    assert _run(capsys, ["certify", "--certificate", str(path)])[0] == 2


def test_survey_output_structure_and_determinism(capsys):
    argv = ["survey", "--n", "6", "--p", "1/2", "--samples", "4", "--seed", "11"]
    code, out1, _ = _run(capsys, argv)
    assert code == 0
    code, out2, _ = _run(capsys, argv)
    assert out1 == out2
    lines = out1.strip().splitlines()
    assert lines[0] == "n,p,seed,h,hf,hf_status,ratio"
    assert len(lines) == 6
    for i, ln in enumerate(lines[1:5]):
        fields = ln.split(",")
        assert fields[0] == "6" and fields[1] == "1/2"
        assert int(fields[2]) == 11 + i
        assert fields[5] == "exact"
        float(fields[6])
    assert lines[5].startswith("# samples=4 mean_h=")
    assert "frac_h_eq_hf=" in lines[5]


def test_survey_degenerate_probability_and_errors(capsys):
    code, out, _ = _run(
        capsys, ["survey", "--n", "4", "--p", "1", "--samples", "1", "--seed", "0"]
    )
    assert code == 0
    row = out.strip().splitlines()[1].split(",")
    assert row[3] == "4" and row[6] == ""  # K4, blank ratio
    assert _run(capsys, ["survey", "--n", "4", "--p", "1/2", "--samples", "0"])[0] == 1
    assert _run(capsys, ["survey", "--n", "4", "--p", "7/2", "--samples", "1"])[0] == 1


def test_construct_json_and_emission(capsys):
    code, out, _ = _run(
        capsys,
        ["construct", "--n0", "4", "--mode", "thomason", "--emit", "3", "--query", "0", "11"],
    )
    assert code == 0
    rec = json.loads(out.strip())
    assert rec["witness"] == "CK"
    assert rec["breadth"] == 1
    assert rec["bound"] == "6/1"
    assert rec["epsilon"] == "3/2"
    assert rec["classes_examined"] == 11
    assert rec["complement_bound"] == "6/1"
    assert rec["emit"]["order"] == 12
    assert rec["emit"]["bound"] == "18/1"
    assert rec["emit"]["epsilon"] == "3/2"
    q = rec["query"]
    from minorkit import graph6_decode

    B = blowup_complete(graph6_decode(rec["witness"]), 3)
    assert q["adjacent"] == B.has_edge(0, 11)


def test_construct_stream_edges_matches_blowup(capsys):
    code, out, _ = _run(
        capsys,
        ["construct", "--n0", "4", "--mode", "thomason", "--emit", "2", "--stream-edges"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    rec = json.loads(lines[0])
    from minorkit import graph6_decode

    B = blowup_complete(graph6_decode(rec["witness"]), 2)
    got = {tuple(map(int, ln.split())) for ln in lines[1:]}
    assert got == set(B.edges())


def test_construct_sampled_and_errors(capsys):
    argv = [
        "construct", "--n0", "4", "--mode", "mader", "--p", "1/2",
        "--samples", "6", "--seed", "9",
    ]
    code, out1, _ = _run(capsys, argv)
    assert code == 0
    assert json.loads(out1.strip())["classes_examined"] == 4
    _, out2, _ = _run(capsys, argv)
    assert out1 == out2
    # mader without a density is a spec-level error, not a usage error
    assert _run(capsys, ["construct", "--n0", "4", "--mode", "mader"])[0] == 1
    assert _run(capsys, ["construct", "--n0", "9", "--mode", "thomason"])[0] == 1


def test_config_fills_unset_options(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"params": "tw", "gen": ["grid:2"]}))
    code, out, _ = _run(capsys, ["--config", str(cfg), "compute"])
    assert code == 0
    assert json.loads(out.strip())["tw"] == 2
    # explicit flags win over config values
    code, out, _ = _run(
        capsys, ["--config", str(cfg), "compute", "--params", "h", "--gen", "path:2"]
    )
    rec = json.loads(out.strip())
    assert rec["h"] == 2 and "tw" not in rec
    assert rec["graph"] == "A_"


def test_config_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"no-such-option": 1}))
    assert _run(capsys, ["--config", str(cfg), "compute", "--params", "h"])[0] == 1
    cfg.write_text(json.dumps([1, 2]))
    assert _run(capsys, ["--config", str(cfg), "compute", "--params", "h"])[0] == 1
    assert _run(capsys, ["--config", str(tmp_path / "absent.json"), "compute"])[0] == 1


def test_worker_pool_matches_serial(capsys, monkeypatch):
    argv = [
        "compute",
        "--gen", "grid:2", "--gen", "cycle:5", "--gen", "path:4",
        "--params", "h,tw",
    ]
    monkeypatch.delenv("MINORKIT_WORKERS", raising=False)
    _, serial, _ = _run(capsys, argv)
    monkeypatch.setenv("MINORKIT_WORKERS", "2")
    _, pooled, _ = _run(capsys, argv)
    assert serial == pooled
    monkeypatch.setenv("MINORKIT_WORKERS", "not-a-number")
    _, fallback, _ = _run(capsys, argv)
    assert fallback == serial


def test_console_entry_point():
    import subprocess

    proc = subprocess.run(
        ["minorkit", "compute", "--gen", "path:3", "--params", "tw"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout.strip())["tw"] == 1


def test_survey_matches_library_rows(capsys):
    from minorkit.cli import survey_rows

    rows = survey_rows(5, "2/5", 3, 21)
    code, out, _ = _run(
        capsys, ["survey", "--n", "5", "--p", "2/5", "--samples", "3", "--seed", "21"]
    )
    assert code == 0
    lines = out.strip().splitlines()[1:4]
    for row, ln in zip(rows, lines):
        fields = ln.split(",")
        assert int(fields[2]) == row.seed
        assert int(fields[3]) == row.hadwiger
        num, den = fields[4].split("/")
        assert row.fractional == type(row.fractional)(int(num), int(den))
