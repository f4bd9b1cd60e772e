import io
import json
import subprocess
import sys

import pytest

from curvcalc.cli import ALL_OPERATIONS, COVERED_OPERATIONS, run
from curvcalc.io import parse_complex


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_every_operation_is_reachable_from_a_subcommand():
    assert COVERED_OPERATIONS == ALL_OPERATIONS


def test_floor_integral_of_identity_fixture(fixture_dir):
    code, out, _ = invoke("integrate", str(fixture_dir / "edge.txt"), "--kind", "floor")
    assert code == 0
    assert out == '{"value": "1"}\n'
    code, out, _ = invoke("integrate", str(fixture_dir / "edge.txt"), "--kind", "ceil")
    assert out == '{"value": "0"}\n'
    code, out, _ = invoke("integrate", str(fixture_dir / "edge.txt"), "--kind", "tentative")
    assert out == '{"value": "1/2"}\n'


def test_simple_integral_and_weights(fixture_dir):
    code, out, _ = invoke(
        "integrate",
        str(fixture_dir / "edge.txt"),
        "--kind",
        "simple",
        "--function",
        str(fixture_dir / "open_edge.fn.json"),
    )
    assert code == 0
    assert json.loads(out) == {"value": "-1"}
    code, out, _ = invoke("integrate", str(fixture_dir / "edge.txt"), "--kind", "weights")
    assert json.loads(out) == {"p0": "1/2", "p1": "1/2"}


def test_validate_reports_link_sizes(fixture_dir):
    code, out, _ = invoke(
        "validate", str(fixture_dir / "octahedron.txt"), "--vertex", "top"
    )
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["simplices"] == 26
    assert report["chi"] == 2 and report["link"] == 8


def test_unknown_subcommand_exits_2():
    assert invoke("nonsense")[0] == 2


def test_missing_file_exits_2(fixture_dir):
    code, _, err = invoke("validate", str(fixture_dir / "no-such-file.txt"))
    assert code == 2
    assert "error" in json.loads(err)


def test_bad_document_reports_parse_error(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("nonsense\n")
    code, _, err = invoke("validate", str(bad))
    assert code == 2
    assert json.loads(err)["error"] == "ParseError"


def test_gauss_bonnet_check_json(fixture_dir):
    code, out, _ = invoke(
        "gauss-bonnet-check",
        str(fixture_dir / "octahedron.txt"),
        "--method",
        "mc",
        "--samples",
        "5000",
        "--seed",
        "3",
    )
    assert code == 0
    report = json.loads(out)
    assert report["chi"] == 2
    assert abs(report["sum_kappa"] - 2) <= 4 * report["bound"] + 1e-9
    assert abs(report["final_integral"] - report["sum_kappa"]) < 1e-9


def test_curvature_csv_and_json(fixture_dir):
    code, out, _ = invoke(
        "curvature", str(fixture_dir / "octahedron.txt"), "--method", "exact"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "vertex,kappa,stderr"
    assert len(lines) == 7
    code, out, _ = invoke(
        "curvature",
        str(fixture_dir / "octahedron.txt"),
        "--method",
        "exact",
        "--format",
        "json",
    )
    data = json.loads(out)
    assert data["top"]["kappa"] == pytest.approx(1 / 3, abs=1e-9)


def test_curvature_alpha_integral(fixture_dir):
    code, out, _ = invoke(
        "curvature", str(fixture_dir / "triangle.txt"), "--alpha", "--method", "exact"
    )
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(0.25, abs=1e-9)


def test_equilateral_flag_for_coordinate_free_files(tmp_path):
    doc = "curvcalc-complex v1\nvertices\na\nb\nc\nsimplices\na b c\n"
    path = tmp_path / "abstract.txt"
    path.write_text(doc)
    code, _, err = invoke("curvature", str(path), "--method", "mc", "--samples", "200")
    assert code == 2  # no coordinates
    code, out, _ = invoke(
        "morse-curvature", str(path), "--equilateral", "--samples", "500"
    )
    assert code == 0
    assert out.splitlines()[0] == "vertex,kappa,stderr"


def test_morse_index_csv(fixture_dir):
    code, out, _ = invoke(
        "morse-index", str(fixture_dir / "octahedron.txt"), "--direction", "0.3,0.5,0.8"
    )
    assert code == 0
    rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
    assert rows == {"top": "1", "bottom": "1", "e1": "0", "e2": "0", "e3": "0", "e4": "0"}


def test_pushforward_and_compose(fixture_dir):
    args = (
        "pushforward",
        "--source", str(fixture_dir / "octahedron.txt"),
        "--target", str(fixture_dir / "path3.txt"),
        "--map", str(fixture_dir / "octa_to_path.map"),
    )
    code, out, _ = invoke(*args)
    assert code == 0
    body, fibers_line = out.rsplit("\n", 2)[0], out.strip().splitlines()[-1]
    entries = json.loads(body)
    assert {(tuple(e["simplex"]), e["value"]) for e in entries} == {
        (("lo",), "1"),
        (("hi",), "1"),
    }
    assert json.loads(fibers_line)["fiber_chi"]["mid"] == 0
    code, out, _ = invoke(
        *args,
        "--compose", str(fixture_dir / "path_to_point.map"),
        "--compose-target", str(fixture_dir / "point.txt"),
    )
    assert code == 0
    assert json.loads(out) == [{"simplex": ["pt"], "value": "2"}]


def test_fubini_chi_json(fixture_dir):
    code, out, _ = invoke(
        "fubini-check",
        "--left", str(fixture_dir / "triangle.txt"),
        "--right", str(fixture_dir / "edge.txt"),
        "--seed", "5",
    )
    assert code == 0
    triple = json.loads(out)
    assert triple["equal"]
    assert triple["direct"] == triple["left_factor_last"] == triple["right_factor_last"]


def test_fubini_curvature_table(fixture_dir):
    code, out, _ = invoke(
        "fubini-check",
        "--left", str(fixture_dir / "edge.txt"),
        "--right", str(fixture_dir / "edge.txt"),
        "--kind", "curvature",
        "--samples", "5000",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "vertex,kappa_product,kappa_factor_product,joint_bound"
    assert len(lines) == 5


def test_adiabatic_csv_plus_summary(fixture_dir):
    code, out, _ = invoke(
        "adiabatic", "--profile", "sphere", "--eps", "0,0.5", "--grid", "512"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "eps,t,lambda"
    summary = json.loads(lines[-1])
    assert summary["chi"] == 2
    assert len(lines) == 1 + 2 * 512 + 1

    code, out, _ = invoke(
        "adiabatic",
        "--profile", "cylinder",
        "--eps", "0",
        "--grid", "64",
        "--format", "json",
        "--nonsplit",
    )
    summary = json.loads(out)
    assert summary["nonsplit"]["absolutely_continuous"]


def test_subdivide_round_trips(fixture_dir):
    code, out, _ = invoke("subdivide", str(fixture_dir / "edge.txt"))
    assert code == 0
    doc = parse_complex(out)
    assert len(doc.complex) == 5
    assert doc.alpha is not None
    code, out, _ = invoke("subdivide", "--census", "2")
    assert json.loads(out)["1,1,1"] == 6


def test_byte_identical_reruns(fixture_dir):
    for args in (
        ("curvature", str(fixture_dir / "octahedron.txt"), "--method", "mc", "--samples", "2000", "--seed", "9"),
        ("morse-curvature", str(fixture_dir / "octahedron.txt"), "--samples", "2000", "--seed", "9"),
        ("adiabatic", "--profile", "torus", "--eps", "0,0.9", "--grid", "128"),
        ("fubini-check", "--left", str(fixture_dir / "edge.txt"), "--right", str(fixture_dir / "edge.txt"), "--kind", "curvature", "--samples", "1000"),
    ):
        first = invoke(*args)
        second = invoke(*args)
        assert first == second
        assert first[0] == 0


def test_console_entry_point(fixture_dir):
    out = subprocess.run(
        [sys.executable, "-m", "curvcalc.cli", "integrate", str(fixture_dir / "edge.txt"), "--kind", "floor"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout == '{"value": "1"}\n'
