import json

import pytest

from spreadlab.core.config import settings
from spreadlab.main import main


def run_json(capsys, *argv):
    status = main([*argv, "--format", "json"])
    return status, json.loads(capsys.readouterr().out)


def test_simulate_c4(capsys):
    status, payload = run_json(capsys, "simulate", "--family", "cycle:4", "--rule", "majority", "--seed", "0")
    assert status == 0
    assert payload["command"] == "simulate"
    assert payload["result"]["converted"] is True
    assert payload["result"]["steps"] == 2
    assert payload["result"]["waves"] == [[1, 3], [2]]
    assert payload["timing"] is None


def test_simulate_times_and_timing(capsys):
    status, payload = run_json(capsys, "simulate", "--family", "path:2", "--rule", "k:2", "--seed", "0",
                               "--times", "--timing")
    assert status == 0
    assert payload["result"]["times"] == [0, None]
    assert payload["result"]["converted"] is False
    assert "elapsed_ms" in payload["timing"]


def test_simulate_text_output(capsys):
    assert main(["simulate", "--family", "cycle:4", "--rule", "majority", "--seed", "0"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "step 1: 1 3" in out
    assert "converted: true" in out


def test_solve_multipartite(capsys):
    status, payload = run_json(capsys, "solve", "--family", "multipartite:3,2,1", "--rule", "majority")
    assert status == 0
    assert payload["result"]["size"] == 2
    assert payload["input"]["family"] == "multipartite:3,2,1"


def test_solve_budget_exhausted_still_succeeds(capsys):
    status, payload = run_json(capsys, "solve", "--family", "path:4", "--rule", "2", "--budget", "2")
    assert status == 0
    assert payload["result"]["found"] is False


def test_solve_over_limit(capsys):
    status, payload = run_json(capsys, "solve", "--family", "path:10", "--rule", "majority", "--limit", "5")
    assert status == 4
    assert payload["error"]["code"] == "solver_limit"


def test_limit_override_is_restored(capsys):
    before = settings.SOLVER_LIMIT
    run_json(capsys, "solve", "--family", "path:3", "--rule", "majority", "--limit", "5")
    assert settings.SOLVER_LIMIT == before


def test_output_is_identical_across_worker_counts(capsys):
    argv = ["solve", "--family", "gnp:10,1/2,3", "--rule", "majority", "--format", "json"]
    main([*argv, "--workers", "1"])
    first = capsys.readouterr().out
    main([*argv, "--workers", "3"])
    assert capsys.readouterr().out == first


def test_bound_cartesian_default_construction(capsys):
    status, payload = run_json(capsys, "bound", "--cartesian", "--left", "complete:2", "--right", "complete:2",
                               "--rule", "majority")
    assert status == 0
    assert payload["result"]["construction"] == "cartesian_slab_union"
    assert payload["result"]["bound"] == 3
    assert payload["result"]["verified"] is True


def test_bound_reduced_with_explicit_sets(capsys):
    status, payload = run_json(capsys, "bound", "--cartesian", "--left", "complete:2", "--right", "complete:2",
                               "--rule", "majority", "--construction", "slab-union-reduced",
                               "--left-set", "0", "--right-set", "0")
    assert status == 0
    assert payload["result"]["witness_pairs"] == [[0, 1], [1, 0]]


def test_bound_tensor_general(capsys, tmp_path):
    path = tmp_path / "k2_iso.txt"
    path.write_text("3 1\n0 1\n")
    status, payload = run_json(capsys, "bound", "--tensor", "--left", f"file:{path}", "--right", "complete:2",
                               "--rule", "majority")
    assert status == 0
    assert payload["result"]["construction"] == "tensor_with_isolated"
    assert payload["result"]["bound"] == 4


def test_bound_precondition_failure(capsys):
    status, payload = run_json(capsys, "bound", "--cartesian", "--left", "cycle:4", "--right", "complete:2",
                               "--rule", "majority", "--construction", "slab-union-reduced", "--left-set", "0,1")
    assert status == 3
    assert payload["error"]["code"] == "not_minimal"
    assert payload["error"]["subject"] == "left"


def test_bound_construction_must_fit_product(capsys):
    status, payload = run_json(capsys, "bound", "--tensor", "--left", "cycle:4", "--right", "cycle:4",
                               "--rule", "majority", "--construction", "slab-union")
    assert status == 2
    assert payload["error"]["code"] == "invalid_config"


def test_bound_numbered_construction(capsys):
    status, payload = run_json(capsys, "bound", "--cartesian", "--left", "complete:2", "--right", "complete:2",
                               "--rule", "majority", "--theorem", "4")
    assert status == 0
    assert payload["input"]["construction"] == "slab-union"
    assert payload["result"]["construction"] == "cartesian_slab_union"
    assert payload["result"]["bound"] == 3
    assert payload["result"]["verified"] is True


@pytest.mark.parametrize("number,construction", [("3", "k-product"), ("5", "slab-union-reduced"), ("6", "side")])
def test_bound_numbers_map_to_constructions(capsys, number, construction):
    product = "--tensor" if construction == "side" else "--cartesian"
    status, payload = run_json(capsys, "bound", product, "--left", "complete:2", "--right", "complete:2",
                               "--rule", "k:1", "--theorem", number)
    assert payload["input"]["construction"] == construction


def test_bound_number_and_construction_conflict(capsys):
    status, payload = run_json(capsys, "bound", "--cartesian", "--left", "complete:2", "--right", "complete:2",
                               "--rule", "majority", "--theorem", "4", "--construction", "slab-union")
    assert status == 2
    assert payload["error"]["code"] == "invalid_config"


def test_usage_error_is_json_in_json_mode(capsys):
    status, payload = run_json(capsys, "bound", "--cartesian", "--left", "complete:2", "--right", "complete:2",
                               "--rule", "majority", "--no-such-flag")
    assert status == 2
    assert payload["command"] == "bound"
    assert payload["input"] == {}
    assert payload["error"]["code"] == "invalid_config"
    assert "--no-such-flag" in payload["error"]["detail"]


def test_usage_error_in_text_mode(capsys):
    assert main(["solve", "--family", "cycle:4"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error[invalid_config]:")


def test_rule_serialised_as_label_in_input_and_result(capsys):
    _, payload = run_json(capsys, "solve", "--family", "cycle:4", "--rule", "majority")
    assert payload["input"]["rule"] == payload["result"]["rule"] == "majority"
    _, payload = run_json(capsys, "simulate", "--family", "path:2", "--rule", "2", "--seed", "0")
    assert payload["input"]["rule"] == payload["result"]["rule"] == "k:2"


def test_gen_normalises_file(capsys, tmp_path):
    path = tmp_path / "c4.txt"
    path.write_text("# square\n4 4\n3 0\n0 1\n2 1\n2 3\n")
    assert main(["gen", "--graph", str(path)]) == 0
    assert capsys.readouterr().out.splitlines() == ["4 4", "0 1", "0 3", "1 2", "2 3"]


def test_bad_graph_file_reports_line(capsys, tmp_path):
    path = tmp_path / "loop.txt"
    path.write_text("2 1\n0 0\n")
    status, payload = run_json(capsys, "gen", "--graph", str(path))
    assert status == 2
    assert payload["error"]["code"] == "self_loop"
    assert payload["error"]["line"] == 2


def test_missing_file(capsys, tmp_path):
    status, payload = run_json(capsys, "gen", "--graph", str(tmp_path / "nope.txt"))
    assert status == 2
    assert payload["error"]["code"] == "io_error"


def test_seed_outside_graph(capsys):
    status, payload = run_json(capsys, "simulate", "--family", "cycle:4", "--rule", "majority", "--seed", "0,9")
    assert status == 2
    assert payload["error"]["code"] == "invalid_seed_set"


def test_invalid_worker_count(capsys):
    status, payload = run_json(capsys, "solve", "--family", "cycle:4", "--rule", "majority", "--workers", "0")
    assert status == 2
    assert payload["error"]["code"] == "invalid_config"


def test_text_errors_go_to_stderr(capsys):
    assert main(["simulate", "--family", "wheel:5", "--rule", "majority", "--seed", "0"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error[invalid_family]" in captured.err


@pytest.mark.parametrize("rule", ["0", "k:zero", "minority"])
def test_bad_rule(capsys, rule):
    status, payload = run_json(capsys, "solve", "--family", "cycle:4", "--rule", rule)
    assert status == 2
    assert payload["error"]["code"] == "invalid_rule"


def test_verify_spot_scope(capsys):
    status, payload = run_json(capsys, "verify", "--scope", "spot")
    assert status == 0
    assert payload["result"]["failed"] == 0
    assert payload["result"]["passed"] == 5
