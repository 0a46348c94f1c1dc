# test_cli.py
"""명령행 진입점 테스트 (종료 코드 / JSON 출력)"""

import json

from app.cli import EXIT_INPUT, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, main
from app.services.verify_service import PRINTED_POLICY_WARNING


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_trees_list(capsys):
    code, out = _run(capsys, "trees", "list", "4")
    assert code == EXIT_OK
    body = json.loads(out.out)
    assert body["count"] == 10
    assert len(body["trees"]) == 10


def test_tree_signs_with_negative_degrees(capsys):
    code, out = _run(capsys, "trees", "signs", "2", "--degrees=-1,-1")
    assert code == EXIT_OK
    body = json.loads(out.out)
    assert body["degrees"] == [-1, -1]
    assert [entry["tree"] for entry in body["signs"]] == ["(.,.)"]


def test_group_info(capsys):
    code, out = _run(capsys, "group", "info", "--group", "S3")
    assert code == EXIT_OK
    assert json.loads(out.out)["class_sizes"] == [1, 3, 2]


def test_group_info_from_table_file(capsys, tmp_path):
    path = tmp_path / "c3.json"
    path.write_text(json.dumps({"name": "C3", "order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}), encoding="utf-8")
    code, out = _run(capsys, "group", "info", "--table", str(path))
    assert code == EXIT_OK
    body = json.loads(out.out)
    assert body["name"] == "C3"
    assert body["abelian"] is True


def test_unknown_group_exits_with_input_error(capsys):
    code, out = _run(capsys, "group", "info", "--group", "A5")
    assert code == EXIT_INPUT
    assert json.loads(out.err.strip().splitlines()[-1])["success"] is False


def test_bad_subcommand_is_usage_error(capsys):
    code, _ = _run(capsys, "frobnicate")
    assert code == EXIT_USAGE


def test_bad_window_is_usage_error(capsys):
    code, _ = _run(capsys, "verify", "complex", "--window=2,-2")
    assert code == EXIT_USAGE


def test_verify_complex(capsys):
    code, out = _run(capsys, "verify", "complex", "--group", "Z3", "--window", "2")
    assert code == EXIT_OK
    body = json.loads(out.out)
    assert body["passed"] is True
    assert body["window"] == [-2, 2]


def test_verify_with_negative_window(capsys):
    code, out = _run(capsys, "verify", "retract", "--group", "S3", "--window=-1,0")
    assert code == EXIT_OK
    assert json.loads(out.out)["window"] == [-1, 0]


def test_compute_diff_from_input_file(capsys, tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps({"field": "Q", "degree": -1, "terms": [{"key": [1], "coeff": 1}]}), encoding="utf-8")
    code, out = _run(capsys, "compute", "diff", "--group", "Z3", "--input", str(path))
    assert code == EXIT_OK
    body = json.loads(out.out)
    assert body["element"]["degree"] == 0
    assert body["element"]["terms"][0]["value"] == [{"element": 1, "coeff": "3"}]


def test_compute_mhat_reads_decomposed_terms(capsys, tmp_path):
    path = tmp_path / "classes.json"
    element = {"degree": 0, "terms": [{"class": 1, "key": [], "coeff": 1}]}
    path.write_text(json.dumps([element, element]), encoding="utf-8")
    code, out = _run(capsys, "compute", "mhat", "--group", "S3", "--input", str(path))
    assert code == EXIT_OK
    terms = json.loads(out.out)["decomposed"]["terms"]
    assert terms == [{"class": 0, "key": [], "coeff": "3"}, {"class": 3, "key": [], "coeff": "3"}]


def test_compute_missing_input_file(capsys, tmp_path):
    code, _ = _run(capsys, "compute", "diff", "--group", "Z3", "--input", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT


def test_abelian_table_csv(capsys):
    code, out = _run(capsys, "abelian", "table", "--group", "Z2", "--op", "m1", "--degrees", "1", "--csv")
    assert code == EXIT_OK
    lines = out.out.strip().splitlines()
    assert lines[0] == "inputs,output_degree,output_key,coeff"
    assert lines[1] == "1,2,1 1,2"


def test_export_with_degree(capsys):
    code, out = _run(capsys, "export", "--group", "Z3", "--degree", "0")
    assert code == EXIT_OK
    body = json.loads(out.out)
    assert body["group"]["order"] == 3
    assert len(body["tate_basis"]) == 3
    assert {entry["class"] for entry in body["decomposed_basis"]} == {0, 1, 2}


def test_pretty_output_to_file(capsys, tmp_path):
    target = tmp_path / "presets.json"
    code, out = _run(capsys, "--pretty", "group", "list", "--output", str(target))
    assert code == EXIT_OK
    assert out.out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith("{\n")
    assert "S3" in json.loads(text)["presets"]


def test_verify_with_printed_policy_warns_and_fails(capsys, small_exhaustive_limit):
    code, out = _run(
        capsys, "verify", "transferred", "--group", "S3", "--window=-1,1", "--levels", "3", "--samples", "60", "--policy", "printed"
    )
    assert code == EXIT_VERIFY_FAILED
    body = json.loads(out.out)
    assert body["passed"] is False
    assert PRINTED_POLICY_WARNING in body["notes"]
