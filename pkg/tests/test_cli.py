import json

import pytest
from hypothesis import given, settings

from tradenet.cli import main
from tradenet.documents import (
    dumps,
    fixture_path,
    flow_problem_to_document,
    instance_to_document,
    parse_flow_problem,
    parse_instance,
    parse_replay,
    replay_to_document,
)
from tradenet.errors import InputError
from tradenet.report import parse_csv_report

from test_equilibrium import flow_problems
from test_market import instances

FIX = {name: str(fixture_path(name + ".json")) for name in (
    "example_a", "example_a_replay", "example_b", "example_b_replay", "example_b_aggregated",
    "segment_0_34", "segment_12_26")}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_example_b_fixture_records_edge_count(example_b):
    assert example_b.network.node_count == 42
    assert len(example_b.network.edges) == 53
    assert "70 edges" in example_b.comment


@pytest.mark.parametrize("name", ["example_a", "example_b", "example_b_aggregated"])
def test_instance_round_trip(name):
    inst = parse_instance(fixture_path(name + ".json").read_text())
    assert parse_instance(dumps(instance_to_document(inst))) == inst


@pytest.mark.parametrize("name", ["segment_0_34", "segment_12_26"])
def test_flow_problem_round_trip(name):
    p = parse_flow_problem(fixture_path(name + ".json").read_text())
    assert parse_flow_problem(dumps(flow_problem_to_document(p))) == p


def test_replay_round_trip(example_a, example_b, replay_a, replay_b):
    for inst, rep in ((example_a, replay_a), (example_b, replay_b)):
        assert parse_replay(dumps(replay_to_document(rep, inst)), inst) == rep


def test_replay_round_trip_keeps_file_values(example_a):
    text = fixture_path("example_a_replay.json").read_text()
    assert replay_to_document(parse_replay(text, example_a), example_a) == json.loads(text)


@settings(max_examples=50)
@given(instances())
def test_random_instance_round_trip(inst):
    assert parse_instance(dumps(instance_to_document(inst))) == inst


@settings(max_examples=50)
@given(flow_problems())
def test_random_flow_problem_round_trip(problem):
    assert parse_flow_problem(dumps(flow_problem_to_document(problem))) == problem


def _doc(name):
    return json.loads(fixture_path(name + ".json").read_text())


def test_negative_markup_is_rejected():
    doc = _doc("example_a")
    doc["markup"] = "−1/2"
    with pytest.raises(InputError, match="markup"):
        parse_instance(json.dumps(doc))


def test_unknown_key_is_rejected():
    doc = _doc("example_a")
    doc["colour"] = "red"
    with pytest.raises(InputError, match="colour"):
        parse_instance(json.dumps(doc))


def test_schema_errors_name_the_field():
    doc = _doc("example_a")
    doc["edges"][3]["ca_transport"] = -2
    with pytest.raises(InputError) as info:
        parse_instance(json.dumps(doc))
    assert "instance.edges[3].ca_transport" in str(info.value)


def test_syntax_error_has_position():
    with pytest.raises(InputError, match=r"line 2, column"):
        parse_instance('{\n  "node_count": ,\n}')


def test_replay_dimension_mismatch(example_a):
    doc = _doc("example_a_replay")
    doc["consumer_site_matrix"]["values"].pop()
    doc["consumer_site_matrix"].pop("rows")
    with pytest.raises(InputError, match="4x4"):
        parse_replay(json.dumps(doc), example_a)


def test_cli_compromise_example_a(capsys):
    code, out, _ = run(capsys, "solve-compromise", FIX["example_a"], "--replay", FIX["example_a_replay"],
                       "--format", "json")
    assert code == 0
    tables = {t["name"]: t for t in json.loads(out)["tables"]}
    assert tables["selection"]["rows"][0][:4] == ["(22,12)", "2", "x12 x22", "156"]


def test_cli_compromise_example_b(capsys):
    code, out, _ = run(capsys, "solve-compromise", FIX["example_b"], "--replay", FIX["example_b_replay"],
                       "--display", "d", "--format", "json")
    assert code == 0
    tables = {t["name"]: t for t in json.loads(out)["tables"]}
    assert tables["selection"]["rows"][0][:4] == ["(5,21)", "1", "x5 x21", "0"]
    assert tables["producer-site costs (distance)"]["rows"][1] == ["x12", "84", "67", "58", "33"]


def test_cli_single_site_instance(tmp_path, capsys):
    doc = {"node_count": 2, "edges": [{"u": 0, "v": 1, "ca_transport": 1, "ca_corruption": 0,
                                       "cb_transport": 1, "cb_corruption": 0}],
           "producers": [{"node": 0, "unit_price": 1}], "consumers": [{"node": 0}],
           "candidate_sites": [1], "retailer_count": 1, "markup": "1/2"}
    path = tmp_path / "one.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "solve-compromise", str(path), "--format", "json")
    assert code == 0
    tables = {t["name"]: t for t in json.loads(out)["tables"]}
    assert tables["income matrix"]["rows"] == [["(1)", "3"]]
    assert tables["selection"]["rows"][0][3] == "0"


def test_cli_equilibrium(capsys):
    code, out, _ = run(capsys, "solve-equilibrium", FIX["segment_0_34"])
    assert code == 0 and "34 1/13" in out and "ok" in out
    code, out, _ = run(capsys, "solve-equilibrium", FIX["segment_12_26"])
    assert code == 0 and "30 6/23" in out
    code, out, _ = run(capsys, "solve-equilibrium", FIX["segment_0_34"], "--mode", "nonnegative", "--format", "json")
    tables = {t["name"]: t for t in json.loads(out)["tables"]}
    assert tables["flows"]["rows"] == [["1", "3/2"], ["2", "0"], ["3", "3/2"]]


def test_cli_distances(capsys):
    code, out, _ = run(capsys, "distances", FIX["example_a"], "--metric", "consumer", "--format", "csv")
    assert code == 0
    table = parse_csv_report(out)["consumer-site costs"]
    assert table[1] == ["x8", "26", "20", "15", "26"]
    code, out, _ = run(capsys, "distances", FIX["example_b_aggregated"], "--metric", "retailer",
                       "--display", "d", "--format", "csv")
    table = parse_csv_report(out)["producer-site costs (distance)"]
    assert table[2][3:] == ["58", "33"]


def test_cli_distances_no_consumers(tmp_path, capsys):
    doc = _doc("example_a")
    doc["consumers"] = []
    path = tmp_path / "empty.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "distances", str(path), "--metric", "consumer", "--format", "csv")
    assert code == 0
    assert parse_csv_report(out)["consumer-site costs"] == [["consumer", "x22", "x15", "x12", "x16"]]


def test_cli_validate(capsys):
    assert run(capsys, "validate", FIX["example_a"])[1].startswith("valid instance: 30 nodes, 51 edges")
    assert run(capsys, "validate", FIX["segment_12_26"])[1].startswith("valid flow problem")
    assert run(capsys, "validate", FIX["example_b_replay"], "--instance", FIX["example_b"])[0] == 0
    assert run(capsys, "validate", FIX["example_b_replay"])[0] == 1


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"node_count": 3}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1 and "input error" in err
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "solve-equilibrium", FIX["segment_0_34"], "--mode", "sideways")[0] == 1

    singular = tmp_path / "singular.json"
    singular.write_text(json.dumps({"edges": [{"id": 1, "fixed": 1, "slope": 0}, {"id": 2, "fixed": 1, "slope": 0}],
                                    "paths": [[1], [2]], "demand": 1}))
    code, _, err = run(capsys, "solve-equilibrium", str(singular))
    assert code == 2
    assert "solver error" in err and "[1 1] = 1" in err


def test_unpriceable_site_is_solver_error(tmp_path, capsys):
    doc = {"node_count": 3, "edges": [], "producers": [{"node": 0, "unit_price": 1}], "consumers": [],
           "candidate_sites": [1, 2], "retailer_count": 1, "markup": 1}
    path = tmp_path / "island.json"
    path.write_text(json.dumps(doc))
    assert run(capsys, "solve-compromise", str(path))[0] == 2


@pytest.mark.parametrize("argv", [
    ["solve-compromise", FIX["example_a"], "--replay", FIX["example_a_replay"]],
    ["solve-compromise", FIX["example_b"], "--replay", FIX["example_b_replay"]],
    ["solve-equilibrium", FIX["segment_12_26"]],
    ["solve-equilibrium", FIX["segment_0_34"], "--mode", "nonnegative"],
    ["distances", FIX["example_a"], "--metric", "retailer"],
])
def test_csv_and_json_agree_and_output_is_deterministic(capsys, argv):
    outputs = {}
    for fmt in ("csv", "json", "text"):
        first = run(capsys, *argv, "--format", fmt)[1]
        assert run(capsys, *argv, "--format", fmt)[1] == first
        outputs[fmt] = first
    doc = json.loads(outputs["json"])
    csv_tables = parse_csv_report(outputs["csv"])
    assert list(csv_tables) == [t["name"] for t in doc["tables"]]
    for t in doc["tables"]:
        assert csv_tables[t["name"]] == [t["columns"]] + t["rows"]
