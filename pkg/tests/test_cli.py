import json

SIGMA3 = {"generators": [[2, -1], [0, 1]]}
SQUARE = [[0, 0], [1, 0], [0, 1], [1, 1]]


def _run(invoke, args, document=None):
    return invoke(["--log-level", "error"] + args, json.dumps(document) if document is not None else None)


def test_dual_of_sigma3(invoke):
    result = _run(invoke, ["dual"], SIGMA3)
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["ambient_dim"] == 2
    assert sorted(doc["generators"]) == [["1", "0"], ["1", "2"]]


def test_dual_written_to_out(invoke, tmp_path):
    out = tmp_path / "results" / "dual.json"
    result = _run(invoke, ["--out", str(out), "dual"], SIGMA3)
    assert result.exit_code == 0
    assert sorted(json.loads(out.read_text())["generators"]) == [["1", "0"], ["1", "2"]]


def test_float_mode_prints_numbers(invoke):
    result = _run(invoke, ["--mode", "float", "dual"], SIGMA3)
    assert result.exit_code == 0
    gens = json.loads(result.output)["generators"]
    assert all(isinstance(x, float) for g in gens for x in g)


def test_exposed_face(invoke):
    result = _run(invoke, ["faces", "--functional", "1,0"], SIGMA3)
    assert result.exit_code == 0
    faces = json.loads(result.output)["faces"]
    assert len(faces) == 1
    assert faces[0]["dim"] == 1
    assert faces[0]["cone"]["generators"] == [["0", "1"]]


def test_functional_outside_the_dual_exits_2(invoke):
    result = _run(invoke, ["faces", "--functional", "-1,0"], SIGMA3)
    assert result.exit_code == 2
    assert "NotInDualError" in result.output


def test_unknown_field_is_a_schema_error(invoke):
    result = _run(invoke, ["dual"], {"generatorz": [[1, 0]]})
    assert result.exit_code == 1
    assert "Schema error" in result.output


def test_malformed_scalar_is_a_schema_error(invoke):
    result = _run(invoke, ["dual"], {"generators": [["1/x", 0]]})
    assert result.exit_code == 1


def test_bad_tolerance_is_a_schema_error(invoke):
    result = _run(invoke, ["--tolerance", "-1", "dual"], SIGMA3)
    assert result.exit_code == 1


def test_check_fan(invoke):
    fan = {
        "ambient_dim": 2,
        "cones": [
            {"generators": [[1, 0], [0, 1]]},
            {"generators": [[0, 1], [-1, -1]]},
            {"generators": [[-1, -1], [1, 0]]},
        ],
    }
    result = _run(invoke, ["check-fan"], fan)
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["is_valid"]
    assert report["cone_count"] == 7


def test_check_fan_names_the_overlapping_pair(invoke):
    fan = {
        "ambient_dim": 2,
        "cones": [
            {"generators": [[1, 0], [0, 1]]},
            {"generators": [[1, 1], [0, 1]]},
        ],
    }
    result = _run(invoke, ["check-fan"], fan)
    assert result.exit_code == 2
    report = json.loads(result.output)
    assert report["is_valid"] is False
    assert report["pair"] == [0, 1]
    assert "common face" in report["error_message"]


def test_is_complete(invoke):
    fan = {"ambient_dim": 2, "cones": [{"generators": [[1, 0]]}]}
    result = _run(invoke, ["is-complete"], fan)
    assert result.exit_code == 0
    assert json.loads(result.output) == {"is_complete": False, "is_compact": False}


def test_star_index_out_of_range(invoke):
    fan = {"ambient_dim": 2, "cones": [{"generators": [[1, 0]]}]}
    result = _run(invoke, ["star", "--cone", "5"], fan)
    assert result.exit_code == 2


def test_toric_binomials(invoke):
    result = _run(invoke, ["toric-binomials"], {"points": [[2], [3]]})
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert len(doc["relations"]) == 1
    assert [abs(a) for a in doc["relations"][0]] == [3, 2]


def test_birch_solve(invoke):
    result = _run(invoke, ["birch-solve"], {"points": [[1, 0], [1, 1], [1, 2]], "target": [1, 1]})
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["chart"] == "configuration"
    assert doc["residual"] < 1e-8
    assert abs(sum(doc["values"]) - 1) < 1e-8


def test_birch_target_outside_the_cone_exits_2(invoke):
    result = _run(invoke, ["birch-solve"], {"points": [[1, 0], [1, 1], [1, 2]], "target": [-1, 0]})
    assert result.exit_code == 2
    assert "NotInConeError" in result.output


def test_secondary_polytope_writes_csv_and_svg(invoke, tmp_path):
    csv_path = tmp_path / "vertices.csv"
    svg_path = tmp_path / "vertices.svg"
    result = _run(
        invoke,
        ["secondary-polytope", "--csv", str(csv_path), "--svg", str(svg_path)],
        {"points": [[0], [1], [2]]})
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert sorted(doc["vectors"]) == [["1", "2", "1"], ["2", "0", "2"]]
    assert doc["regular"] == [True, True]
    assert len(doc["projection_axes"]) == 2
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "phi0,phi1,phi2"
    assert sorted(lines[1:]) == ["1,2,1", "2,0,2"]
    assert svg_path.exists()


def test_too_many_points_exit_2(invoke):
    result = _run(invoke, ["triangulations", "--max-points", "3"], {"points": SQUARE})
    assert result.exit_code == 2


def test_regular_subdivision_of_the_square(invoke):
    result = _run(invoke, ["regular-subdivision"], {"points": SQUARE, "lifting": [1, 0, 0, 0]})
    assert result.exit_code == 0
    assert json.loads(result.output)["cells"] == [[0, 1, 2], [1, 2, 3]]


def test_hausdorff_limit_animation(invoke, tmp_path):
    frames = tmp_path / "frames"
    result = _run(
        invoke,
        ["hausdorff-limit", "--density", "200", "--animate", "1,2", "--frames", str(frames)],
        {"points": SQUARE, "lifting": [1, 0, 0, 0]})
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["s_values"] == [1.0, 2.0]
    assert doc["limit_cells"] == [[0, 1, 2], [1, 2, 3]]
    assert len(doc["distances"]) == 2
    assert sorted(p.name for p in frames.iterdir()) == ["limit.csv", "s_1.csv", "s_2.csv"]


def test_malformed_animate_list(invoke):
    result = _run(invoke, ["hausdorff-limit", "--animate", "1,x"], {"points": SQUARE, "lifting": [1, 0, 0, 0]})
    assert result.exit_code == 1


def test_hausdorff_limit_with_the_torus_sampler(invoke):
    result = _run(
        invoke,
        ["hausdorff-limit", "--density", "100", "--sampler", "torus"],
        {"points": SQUARE, "lifting": [1, 0, 0, 0], "s_values": [1, 4]})
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["limit_cells"] == [[0, 1, 2], [1, 2, 3]]
    assert len(doc["distances"]) == 2


def test_version(invoke):
    result = invoke(["--version"])
    assert result.exit_code == 0
    assert "0.1.0" in result.output
