import json

from fpdirections.cli import main

CUBIC_POINTS = "0,0 1,1 2,3 3,2 4,4"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_directions_cubic_graph(capsys):
    code, out, _ = run(
        capsys, "directions", "-p", "5", "--points", CUBIC_POINTS, "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["direction_count"] == 4
    assert report["directions"] == ["1", "2", "3", "4"]
    assert report["is_line"] is False
    assert report["projection_degrees"]["inf"] == 0


def test_directions_line_and_human_format(capsys):
    code, out, _ = run(capsys, "directions", "-p", "5", "--points", "0,1 1,3 2,0 3,2 4,4")
    assert code == 0
    assert "direction count d = 1" in out
    assert "is_line: true" in out


def test_directions_single_point_is_an_input_error(capsys):
    code, _, err = run(capsys, "directions", "-p", "5", "--points", "1,1")
    assert code == 2
    assert "two distinct points" in err


def test_directions_malformed_points(capsys):
    code, _, err = run(capsys, "directions", "-p", "5", "--points", "1;1 2;2")
    assert code == 2


def test_directions_points_file(tmp_path, capsys):
    path = tmp_path / "pts.txt"
    path.write_text("0,0 1,1\n2,3 3,2 4,4\n")
    code, out, _ = run(
        capsys, "directions", "-p", "5", "--points-file", str(path), "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["direction_count"] == 4


def test_interpolate_examples(capsys):
    code, out, _ = run(
        capsys, "interpolate", "-p", "5", "--values", "1,2,0,0,2", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["coefficients"] == [1, 0, 1]
    assert report["degree"] == 2
    assert report["lifted_value_sum"] == 5
    assert report["sum_criterion"] is True

    code, out, _ = run(
        capsys, "interpolate", "-p", "5", "--values", "0,0,0,0,0", "--format", "json"
    )
    assert json.loads(out)["degree"] is None

    code, out, _ = run(
        capsys, "interpolate", "-p", "5", "--values", "0,1,2,3,4", "--format", "json"
    )
    assert json.loads(out)["coefficients"] == [0, 1]


def test_interpolate_wrong_length(capsys):
    code, _, err = run(capsys, "interpolate", "-p", "5", "--values", "1,2,3")
    assert code == 2
    assert "exactly p = 5 values" in err


def test_verify_main_exhaustive(capsys):
    code, out, _ = run(
        capsys, "verify", "main", "-p", "5", "--exhaustive", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["scanned"] == 3125
    assert report["tally"]["fail"] == 0


def test_verify_redei_exhaustive_small(capsys):
    code, out, _ = run(
        capsys, "verify", "redei", "-p", "3", "--exhaustive", "--k", "3", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["scanned"] == 84
    assert report["census"]["line_count"] == 12


def test_verify_gacs_alias_and_vacuous_note(capsys):
    code, out, _ = run(capsys, "verify", "gacs", "-p", "5", "--exhaustive")
    assert code == 0
    assert "vacuous" in out
    assert "verdict: PASS" in out


def test_verify_needs_exactly_one_mode(capsys):
    code, _, err = run(capsys, "verify", "main", "-p", "5")
    assert code == 2
    code, _, err = run(capsys, "verify", "main", "-p", "5", "--exhaustive", "--sample", "10")
    assert code == 2


def test_verify_unknown_statement(capsys):
    code, _, err = run(capsys, "verify", "abc_conjecture", "-p", "5", "--exhaustive")
    assert code == 2


def test_verify_guard_exit_code(capsys):
    code, _, err = run(capsys, "verify", "main", "-p", "11", "--exhaustive")
    assert code == 3
    assert "guard" in err


def test_verify_sampled_szonyi_with_k(capsys):
    code, out, _ = run(
        capsys, "verify", "szonyi", "-p", "7", "--sample", "500", "--k", "4",
        "--seed", "9", "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["scanned"] == 500
    assert report["evidence_grade"] is True
    assert report["census"]["k"] == 4


def test_verify_counterexample_file_written_empty(tmp_path, capsys):
    path = tmp_path / "hits.jsonl"
    code, _, _ = run(
        capsys, "verify", "redei", "-p", "3", "--exhaustive",
        "--counterexamples", str(path),
    )
    assert code == 0
    assert path.read_text() == ""


def test_verify_csv_census_output(capsys):
    code, out, _ = run(
        capsys, "verify", "redei", "-p", "3", "--exhaustive", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "p,k,d,count,exemplar"
    assert any(row.startswith("3,3,1,12") for row in lines)


def test_csv_rejected_where_undefined(capsys):
    code, _, err = run(
        capsys, "interpolate", "-p", "5", "--values", "1,2,0,0,2", "--format", "csv"
    )
    assert code == 2


def test_classify_polys_guard(capsys):
    code, _, err = run(capsys, "classify", "polys", "-p", "17")
    assert code == 3
    assert "guard" in err


def test_classify_polys_p5(capsys):
    code, out, _ = run(capsys, "classify", "polys", "-p", "5", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["witness_canonical"] == [0, 1, 1]
    assert report["orbit_count"] == 2
    assert report["witness_orbit_is_unique"] is False
    assert report["transform_convention"].startswith("input substitutions")


def test_classify_sets_p3(capsys):
    code, out, _ = run(capsys, "classify", "sets", "-p", "3", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["total_members"] == 72
    assert report["orbit_count"] == 1
    assert report["reverified_members"] == 72


def test_product_command(capsys):
    code, out, _ = run(
        capsys, "product", "-p", "5", "--a", "0,1", "--b", "0,1", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "pass"
    assert report["report"]["witness"]["d"] == 4

    code, out, _ = run(
        capsys, "product", "-p", "5", "--a", "0", "--b", "0,1,2", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["status"] == "skip"


def test_byte_identical_reruns(tmp_path, capsys):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for path in (out1, out2):
        code, _, _ = run(
            capsys, "verify", "kiss_somlai", "-p", "7", "--sample", "400",
            "--seed", "5", "--format", "json", "--out", str(path),
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_human_numbers_appear_in_machine_format(capsys):
    code, human, _ = run(capsys, "verify", "main", "-p", "5", "--exhaustive")
    code, machine, _ = run(
        capsys, "verify", "main", "-p", "5", "--exhaustive", "--format", "json"
    )
    report = json.loads(machine)
    assert f"scanned = {report['scanned']}" in human
    assert f"pass = {report['tally']['pass']}" in human


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
