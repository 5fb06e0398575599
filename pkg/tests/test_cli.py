"""End-to-end command behavior: envelopes, exit codes, reproducibility."""

import json

import pytest

from ttpack import DEFAULT_SEED, FORMAT_VERSION, TOOL_VERSION
from ttpack.cli import main
from ttpack.constructions import qr7
from ttpack.tournament import parse_tournament, serialize_tournament

ENVELOPE_KEYS = {"config", "format_version", "result", "seed", "tool", "tool_version"}


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


@pytest.fixture()
def qr7_file(tmp_path):
    path = tmp_path / "qr7.txt"
    path.write_text(serialize_tournament(qr7()))
    return str(path)


def test_envelope_shape(capsys, qr7_file):
    code, doc, _ = run_json(capsys, "census", "--in", qr7_file)
    assert code == 0
    assert set(doc) == ENVELOPE_KEYS
    assert doc["tool"] == "ttpack"
    assert doc["tool_version"] == TOOL_VERSION
    assert doc["format_version"] == FORMAT_VERSION
    assert doc["seed"] == DEFAULT_SEED
    assert doc["result"]["a"] == 21 and doc["result"]["t"] == 14


def test_census_of_three_cycle(capsys, tmp_path):
    path = tmp_path / "cycle3.txt"
    path.write_text("n=3\n101\n")
    code, doc, _ = run_json(capsys, "census", "--in", str(path))
    assert code == 0
    assert doc["result"]["a"] == 0 and doc["result"]["t"] == 1


def test_solve_json_fields(capsys, qr7_file):
    code, doc, _ = run_json(capsys, "solve", "--in", qr7_file, "--k", "3")
    assert code == 0
    result = doc["result"]
    assert set(result) == {"n", "k", "value", "optimal", "copies", "nodes_explored"}
    assert result["value"] == 6 and result["optimal"] is True


def test_repeated_runs_are_byte_identical(capsys, qr7_file):
    _, first, _ = run(capsys, "solve", "--in", qr7_file)
    _, second, _ = run(capsys, "solve", "--in", qr7_file)
    assert first == second


def test_malformed_file_exits_2_with_byte_offset(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n=3\n1?1\n")
    code, out, err = run(capsys, "census", "--in", str(path))
    assert code == 2
    assert "byte offset 5" in err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "census", "--in", str(tmp_path / "nope.txt"))
    assert code == 2
    assert err


def test_usage_error_exits_2(capsys):
    assert main(["solve"]) == 2
    assert main(["no-such-command"]) == 2


def test_verify_packing_round_trip(capsys, qr7_file, tmp_path):
    sol = tmp_path / "sol.json"
    code, out, _ = run(capsys, "solve", "--in", qr7_file, "--out", str(sol))
    assert code == 0
    code, doc, _ = run_json(capsys, "verify", "packing", "--in", qr7_file, "--packing", str(sol))
    assert code == 0
    assert doc["result"]["valid"] is True


def test_verify_packing_rejects_overlap(capsys, qr7_file, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"result": {"k": 3, "copies": [[0, 1, 3], [0, 1, 5]]}}))
    code, doc, _ = run_json(capsys, "verify", "packing", "--in", qr7_file, "--packing", str(bad))
    assert code == 1
    assert doc["result"]["valid"] is False


def test_verify_design_round_trip(capsys, tmp_path):
    out = tmp_path / "fano.txt"
    assert main(["design", "--fano", "--out", str(out)]) == 0
    code, doc, _ = run_json(capsys, "verify", "design", "--in", str(out))
    assert code == 0 and doc["result"]["valid"] is True
    broken = out.read_text().splitlines()
    broken[2] = broken[1]  # duplicated block double-covers its pairs
    bad = tmp_path / "broken.txt"
    bad.write_text("\n".join(broken) + "\n")
    code, doc, _ = run_json(capsys, "verify", "design", "--in", str(bad))
    assert code == 1


def test_construct_round_trips_through_parser(capsys, tmp_path):
    path = tmp_path / "t.txt"
    assert main(["construct", "--qr7", "--out", str(path)]) == 0
    assert parse_tournament(path.read_text()) == qr7()
    assert main(["construct", "--turan3", "--n", "10", "--out", str(path)]) == 0
    assert parse_tournament(path.read_text()).n == 10
    assert main(["construct", "--blowup", "2", "--out", str(path)]) == 0
    assert parse_tournament(path.read_text()).n == 14


def test_construct_requires_order_for_turan(capsys):
    code, _, err = run(capsys, "construct", "--turan3")
    assert code == 2


def test_enumerate_with_cache(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "enumerate", "--n", "5", "--cache", str(tmp_path))
    assert code == 0
    assert doc["result"]["count"] == 12
    assert len(doc["result"]["codes"]) == 12


def test_enumerate_score_filter(capsys, tmp_path):
    code, doc, _ = run_json(
        capsys, "enumerate", "--n", "5", "--score", "2,2,2,2,2", "--cache", str(tmp_path)
    )
    assert code == 0
    assert doc["result"]["count"] == 1


def test_lp_command(capsys):
    code, doc, _ = run_json(capsys, "lp", "--budget", "35/4")
    assert code == 0
    assert doc["result"]["minimum"] == "153/28"
    assert doc["result"]["argmin"] == ["0", "13/28", "15/28"]


def test_experiment_density_csv(capsys):
    code, out, _ = run(
        capsys, "experiment", "density", "--n", "12", "--trials", "3", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "trial,copies,covered_fraction"
    assert len(lines) == 4
    assert lines[1].startswith("0,")


def test_experiment_edge_stats_on_file(capsys, qr7_file):
    code, doc, _ = run_json(capsys, "experiment", "edge-stats", "--in", qr7_file, "--k", "3")
    assert code == 0
    # a rotational host is edge-regular for triple counts
    assert doc["result"]["min"] == doc["result"]["max"]


def test_verify_lemma22_passes(capsys, cache_dir):
    code, doc, _ = run_json(capsys, "verify", "lemma22", "--cache", cache_dir)
    assert code == 0
    assert doc["result"]["classes"] == 456
    assert doc["result"]["min_packing"] == 5


def test_fmin_command(capsys, cache_dir):
    code, doc, _ = run_json(capsys, "fmin", "--n", "5", "--cache", cache_dir)
    assert code == 0
    assert doc["result"]["f"] == 2


def test_pipeline_command(capsys, tmp_path):
    from ttpack.tournament import random_tournament

    host = tmp_path / "t49.txt"
    host.write_text(serialize_tournament(random_tournament(49, 7)))
    code, doc, _ = run_json(
        capsys, "pipeline", "--in", str(host), "--trials", "2", "--seed", "11"
    )
    assert code == 0
    assert doc["result"]["min_total"] >= 280
    assert doc["seed"] == 11


def test_text_format(capsys, qr7_file):
    code, out, _ = run(capsys, "census", "--in", qr7_file, "--format", "text")
    assert code == 0
    assert out == "n=7 a=21 t=14\n"
