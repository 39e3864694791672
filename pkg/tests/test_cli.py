"""CLI tests: subcommands, file formats, exit codes, env seed override."""

import json

import numpy as np
import pytest

from hbezier.cli import (
    DimensionMismatch,
    ParseError,
    SEED_ENV,
    main,
    parse_polygon_file,
    polygon_to_text,
)
from hbezier.bezier import ControlPolygon, casteljau_eval


@pytest.fixture
def quad_file(tmp_path):
    path = tmp_path / "quad.txt"
    path.write_text("0 0\n0.5 1\n1 0\n")
    return str(path)


class TestPolygonFile:
    def test_basic(self, quad_file):
        poly = parse_polygon_file(quad_file)
        assert poly.count == 3 and poly.dim == 2

    def test_comments_and_blank_lines(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("# comment\n1 2 3\n\n4 5 6  # trailing\n")
        poly = parse_polygon_file(str(path))
        assert poly.count == 2 and poly.dim == 3

    def test_dimension_mismatch_reports_line(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("1 2\n3\n")
        with pytest.raises(DimensionMismatch) as info:
            parse_polygon_file(str(path))
        assert info.value.line == 2

    def test_non_number(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("1 2\nx y\n")
        with pytest.raises(ParseError) as info:
            parse_polygon_file(str(path))
        assert info.value.line == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            parse_polygon_file(str(tmp_path / "nope.txt"))

    def test_round_trip(self, tmp_path):
        poly = ControlPolygon(np.random.default_rng(0).uniform(size=(5, 2)))
        path = tmp_path / "rt.txt"
        path.write_text(polygon_to_text(poly, header="meta"))
        back = parse_polygon_file(str(path))
        np.testing.assert_array_equal(back.points, poly.points)


class TestEval:
    def test_csv_grid_three(self, quad_file, tmp_path, capsys):
        out = tmp_path / "c.csv"
        rc = main(["eval", quad_file, "--method", "casteljau", "--grid", "3", "-o", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "s,x1,x2"
        svals = [float(line.split(",")[0]) for line in lines[1:]]
        assert svals == [0.0, 0.5, 1.0]

    def test_csv_round_trips_exactly(self, quad_file, tmp_path):
        out = tmp_path / "c.csv"
        main(["eval", quad_file, "--grid", "9", "-o", str(out)])
        lines = out.read_text().splitlines()[1:]
        poly = parse_polygon_file(quad_file)
        for line in lines:
            s, x, y = (float(tok) for tok in line.split(","))
            assert x == casteljau_eval(poly.axis(0), s)
            assert y == casteljau_eval(poly.axis(1), s)

    def test_identical_invocations_identical_bytes(self, quad_file, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            assert main(["eval", quad_file, "--method", "hankel", "--grid", "17",
                         "--seed", "5", "-o", str(path)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_hankel_matches_casteljau(self, quad_file, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["eval", quad_file, "--method", "casteljau", "--grid", "9", "-o", str(a)]) == 0
        assert main(["eval", quad_file, "--method", "hankel", "--grid", "9", "-o", str(b)]) == 0
        pa = np.array([[float(t) for t in l.split(",")] for l in a.read_text().splitlines()[1:]])
        pb = np.array([[float(t) for t in l.split(",")] for l in b.read_text().splitlines()[1:]])
        assert np.abs(pa - pb).max() <= 1e-10

    def test_even_count_notes_elevation(self, tmp_path, capsys):
        path = tmp_path / "four.txt"
        path.write_text("0 0\n0.2 1\n0.8 1\n1 0\n")
        rc = main(["eval", str(path), "--method", "hankel", "--grid", "5", "-o", str(tmp_path / "o.csv")])
        assert rc == 0
        assert "degree-elevating" in capsys.readouterr().err

    def test_fallback_exit_code_two(self, tmp_path, capsys):
        path = tmp_path / "zeros.txt"
        path.write_text("0 0\n0 0\n0 0\n")
        rc = main(["eval", str(path), "--method", "hankel", "--grid", "3", "-o", str(tmp_path / "o.csv")])
        assert rc == 2
        assert "fell back" in capsys.readouterr().err

    def test_svg(self, quad_file, tmp_path):
        out = tmp_path / "c.svg"
        assert main(["eval", quad_file, "--svg", "--grid", "17", "-o", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("<svg") and text.count("<polyline") == 2

    def test_parse_failure_exit_one(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("1 2\nbroken\n")
        assert main(["eval", str(path)]) == 1
        assert "error:" in capsys.readouterr().err


class TestFactor:
    def test_inline_values(self, capsys):
        rc = main(["factor", "--values", "2,1,3", "--seed", "0"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "residual=" in out and "m=2" in out

    def test_singular_never_fails(self, capsys):
        rc = main(["factor", "--values", "1,1,1", "--precondition", "never"])
        assert rc == 1
        assert "error:" in capsys.readouterr().err

    def test_singular_always_reports_sigma(self, capsys):
        rc = main(["factor", "--values", "1,1,1", "--precondition", "always"])
        assert rc == 0
        assert "sigma=4.0" in capsys.readouterr().out

    def test_json_output(self, quad_file, capsys):
        rc = main(["factor", quad_file, "--json", "--seed", "3"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert [a["label"] for a in payload["axes"]] == ["axis1", "axis2"]
        axis = payload["axes"][0]
        assert axis["order"] == 2
        assert axis["residual"] <= 1e-8
        assert len(axis["nodes"]) == 2 and len(axis["nodes"][0]) == 2

    def test_requires_input(self, capsys):
        assert main(["factor"]) == 1


class TestBench:
    def test_markdown_stdout_and_csv_file(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        rc = main(
            [
                "bench",
                "--n",
                "15",
                "--methods",
                "casteljau,hankel",
                "--seed",
                "7",
                "--grid",
                "17",
                "--reps",
                "1",
                "--format",
                "csv",
                "-o",
                str(out),
            ]
        )
        assert rc == 0
        assert capsys.readouterr().out.startswith("| N | method |")
        lines = out.read_text().splitlines()
        assert lines[0] == "n,method,median_time_s,error_norm,cond,fallbacks"
        assert len(lines) == 3

    def test_deterministic_error_column(self, tmp_path):
        args = ["bench", "--n", "15", "--methods", "casteljau,hankel", "--seed", "7",
                "--grid", "17", "--reps", "1", "--format", "json"]
        outs = []
        for name in ("x.json", "y.json"):
            path = tmp_path / name
            assert main(args + ["-o", str(path)]) == 0
            payload = json.loads(path.read_text())
            outs.append([(r["n"], r["method"], r["error_norm"], r["cond"]) for r in payload["rows"]])
        assert outs[0] == outs[1]

    def test_three_n_values(self, tmp_path, capsys):
        rc = main(["bench", "--n", "15,23,31", "--methods", "casteljau", "--grid", "9", "--reps", "1"])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.count("| casteljau |") == 3

    def test_compare_backends(self, capsys):
        assert main(["bench", "--compare-backends"]) == 0
        assert capsys.readouterr().out.startswith("| kernel | backend |")

    def test_bad_config_exit_one(self, capsys):
        assert main(["bench", "--n", "14"]) == 1


class TestGenAndElevate:
    def test_gen_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        assert main(["gen", "--n", "15", "--seed", "9", "-o", str(a)]) == 0
        assert main(["gen", "--n", "15", "--seed", "9", "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_gen_targets(self, tmp_path):
        out = tmp_path / "ill.txt"
        assert main(["gen", "--n", "31", "--target", "ill", "--seed", "0", "-o", str(out)]) == 0
        poly = parse_polygon_file(str(out))
        assert poly.count == 31

    def test_env_seed_override(self, tmp_path, monkeypatch):
        a, b, c = (tmp_path / s for s in ("a.txt", "b.txt", "c.txt"))
        monkeypatch.setenv(SEED_ENV, "11")
        main(["gen", "--n", "7", "-o", str(a)])
        main(["gen", "--n", "7", "-o", str(b)])
        monkeypatch.setenv(SEED_ENV, "12")
        main(["gen", "--n", "7", "-o", str(c)])
        assert a.read_bytes() == b.read_bytes()
        assert a.read_bytes() != c.read_bytes()

    def test_elevate_preserves_curve(self, quad_file, tmp_path):
        out = tmp_path / "up.txt"
        assert main(["elevate", quad_file, "-o", str(out)]) == 0
        lifted = parse_polygon_file(str(out))
        assert lifted.count == 4
        orig = parse_polygon_file(quad_file)
        for s in np.linspace(0, 1, 9):
            for j in range(2):
                assert casteljau_eval(lifted.axis(j), s) == pytest.approx(
                    casteljau_eval(orig.axis(j), s), abs=1e-12
                )
