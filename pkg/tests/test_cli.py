"""File formats and the CLI surface: round trips, schemas, exit codes."""

import json
from fractions import Fraction

import pytest

from onng import PointSet, RankedMetric, build_onng, metric_from_points
from onng.fileio import (
    parse_metric,
    parse_order,
    parse_points,
    render_dot,
    sniff_format,
    write_metric,
    write_order,
    write_points,
)
import onng.cli as cli
import onng.oracle as oracle

from conftest import run_cli


# ------------------------------------------------------------- file formats


def test_points_round_trip_exact():
    ps = PointSet(2, ((0, 0), (Fraction(1, 3), Fraction(-7, 2)), (1, 2)))
    again = parse_points(write_points(ps))
    assert again.exact() == ps.exact()
    assert metric_from_points(again) == metric_from_points(ps)


def test_points_parser_rejects_ragged_lines():
    with pytest.raises(ValueError, match="expected 2 coordinates"):
        parse_points("1 2\n3\n")
    with pytest.raises(ValueError, match="bad coordinate"):
        parse_points("1 x\n")
    with pytest.raises(ValueError, match="no data lines"):
        parse_points("# only a comment\n")


def test_points_parser_handles_comments_and_decimals():
    ps = parse_points("# corner\n0.5 -2   # inline note\n\n1/3 4\n")
    assert ps.exact() == ((Fraction(1, 2), Fraction(-2)), (Fraction(1, 3), Fraction(4)))


def test_metric_round_trip():
    m = RankedMetric(4, (5, 1, 0, 2, 4, 3))
    assert parse_metric(write_metric(m)) == m


def test_metric_parser_accepts_any_line_order():
    text = "3\n1 2 0\n0 1 1\n0 2 2\n"
    m = parse_metric(text)
    assert m.rank(1, 2) == 0
    assert m.rank(0, 1) == 1


def test_metric_parser_rejects_defects():
    with pytest.raises(ValueError, match="header"):
        parse_metric("x\n")
    with pytest.raises(ValueError, match="expected 3 pair lines"):
        parse_metric("3\n0 1 0\n")
    with pytest.raises(ValueError, match="given twice"):
        parse_metric("3\n0 1 0\n1 0 1\n1 2 2\n")
    with pytest.raises(ValueError, match="bad pair"):
        parse_metric("3\n0 0 0\n0 2 1\n1 2 2\n")
    with pytest.raises(ValueError, match="bijection"):
        parse_metric("3\n0 1 0\n0 2 0\n1 2 2\n")


def test_order_round_trip():
    assert parse_order(write_order((2, 0, 1))) == (2, 0, 1)
    with pytest.raises(ValueError):
        parse_order("1\nx\n")
    with pytest.raises(ValueError, match="expected 3"):
        parse_order("0\n1\n", n=3)


def test_sniff_format():
    assert sniff_format("3\n0 1 0\n0 2 1\n1 2 2\n") == "metric"
    assert sniff_format("0\n1\n3\n4\n") == "points"
    assert sniff_format("1.5 2\n") == "points"
    assert sniff_format("4\n") == "points"  # header without enough pair lines
    assert sniff_format("1\n") == "metric"  # trivial single-vertex metric


def test_render_dot_lists_every_vertex_and_edge():
    m = metric_from_points(PointSet(1, ((0,), (1,), (3,))))
    g = build_onng(m, (0, 2, 1))
    assert render_dot(g) == (
        "digraph onng {\n"
        "  v0;\n"
        "  v1;\n"
        "  v2;\n"
        "  v1 -> v0;\n"
        "  v2 -> v0;\n"
        "}\n"
    )


# --------------------------------------------------------------------- CLI


def test_gen_hard_line_bytes():
    code, out, err = run_cli(["gen", "hard-line", "--k", "2"])
    assert code == 0
    assert out == "0\n1\n3\n4\n"


def test_gen_hard_line_truncated(tmp_path):
    target = tmp_path / "pts.txt"
    code, out, _ = run_cli(["gen", "hard-line", "--k", "1", "--n", "3", "-o", str(target)])
    assert code == 0
    assert out == ""
    assert target.read_text() == "0\n1\n3\n"


def test_gen_commands_are_seed_deterministic():
    for argv in (
        ["gen", "random-points", "--n", "12", "--d", "3", "--seed", "99"],
        ["gen", "random-metric", "--n", "9", "--seed", "99"],
    ):
        code1, out1, _ = run_cli(argv)
        code2, out2, _ = run_cli(argv)
        assert code1 == code2 == 0
        assert out1 == out2
    _, changed, _ = run_cli(["gen", "random-metric", "--n", "9", "--seed", "100"])
    assert changed != out2


def test_gen_random_points_grid_format():
    code, out, _ = run_cli(["gen", "random-points", "--n", "3", "--d", "2", "--seed", "1"])
    assert code == 0
    for token in out.split():
        assert token.startswith("0.") and len(token) == 11


def test_order_line_report_schema(tmp_path):
    src = tmp_path / "p.txt"
    src.write_text("0\n1\n3\n4\n")
    code, out, _ = run_cli(["order", "--strategy", "line", "--input", str(src)])
    assert code == 0
    assert json.loads(out) == {
        "center": 0,
        "guarantee": 2,
        "indegrees": [2, 0, 0, 1],
        "max_indegree": 2,
        "n": 4,
        "order": [0, 3, 1, 2],
        "strategy": "line",
    }
    # keys arrive sorted for byte stability
    assert out.index('"center"') < out.index('"guarantee"') < out.index('"indegrees"')


def test_order_line_maps_ids_through_sorting(tmp_path):
    src = tmp_path / "p.txt"
    src.write_text("4\n0\n3\n1\n" )  # same set, scrambled ids
    code, out, _ = run_cli(["order", "--strategy", "line", "--input", str(src),
                            "--input-format", "points"])
    assert code == 0
    rep = json.loads(out)
    assert rep["center"] == 1  # the point at coordinate 0
    assert rep["max_indegree"] == 2
    assert sorted(rep["order"]) == [0, 1, 2, 3]


def test_order_path_and_save_order_round_trip(tmp_path):
    src = tmp_path / "m.txt"
    run_cli(["gen", "random-metric", "--n", "12", "--seed", "5", "-o", str(src)])
    saved = tmp_path / "ord.txt"
    code, out, _ = run_cli(["order", "--strategy", "path", "--tail", "7",
                            "--input", str(src), "--save-order", str(saved)])
    assert code == 0
    rep = json.loads(out)
    assert rep["max_indegree"] == 1
    assert rep["guarantee"] == 1
    assert rep["order"][-1] == 7
    code, out2, _ = run_cli(["eval", "--input", str(src), "--order", str(saved)])
    assert code == 0
    rep2 = json.loads(out2)
    assert rep2["indegrees"] == rep["indegrees"]
    assert rep2["strategy"] == "eval"
    assert rep2["guarantee"] is None


def test_order_brute_on_hard_line(tmp_path):
    src = tmp_path / "p.txt"
    run_cli(["gen", "hard-line", "--k", "3", "-o", str(src)])
    code, out, _ = run_cli(["order", "--strategy", "brute", "--input", str(src)])
    assert code == 0
    rep = json.loads(out)
    assert rep["max_indegree"] == 3
    assert rep["guarantee"] == 3


def test_order_ramsey_reports_hub_as_center(tmp_path):
    src = tmp_path / "p.txt"
    src.write_text("0\n10\n11\n")
    code, out, _ = run_cli(["order", "--strategy", "ramsey", "--input", str(src),
                            "--input-format", "points"])
    assert code == 0
    rep = json.loads(out)
    assert rep["order"] == [2, 0, 1]
    assert rep["center"] == 2
    assert rep["guarantee"] == 2
    assert rep["max_indegree"] >= 2


def test_order_euclid_dot_output(tmp_path):
    src = tmp_path / "p.txt"
    src.write_text("0 0\n1 0\n3 0\n4 0\n")
    code, out, _ = run_cli(["order", "--strategy", "euclid", "--input", str(src),
                            "--format", "dot"])
    assert code == 0
    assert out.startswith("digraph onng {")
    assert "v3 -> v0;" in out


def test_eval_rejects_non_permutation(tmp_path):
    src = tmp_path / "p.txt"
    src.write_text("0\n1\n3\n")
    bad = tmp_path / "ord.txt"
    bad.write_text("0\n1\n1\n")
    code, _, err = run_cli(["eval", "--input", str(src), "--order", str(bad),
                            "--input-format", "points"])
    assert code == 1
    assert "duplicate ids [1]" in err
    assert "missing ids [2]" in err


def test_usage_errors_exit_1(tmp_path):
    assert run_cli(["gen", "random-points", "--n", "0", "--d", "2", "--seed", "1"])[0] == 1
    assert run_cli(["order", "--strategy", "warp", "--input", "x"])[0] == 1
    assert run_cli(["nope"])[0] == 1
    assert run_cli(["order", "--strategy", "path", "--input", str(tmp_path / "missing")])[0] == 1
    src = tmp_path / "m.txt"
    run_cli(["gen", "random-metric", "--n", "4", "--seed", "1", "-o", str(src)])
    assert run_cli(["order", "--strategy", "euclid", "--input", str(src)])[0] == 1
    assert run_cli(["order", "--strategy", "path", "--tail", "9", "--input", str(src)])[0] == 1
    code, _, err = run_cli(["order", "--strategy", "line", "--input", str(src)])
    assert code == 1 and "1-D points" in err


def test_guard_refusals_exit_2(tmp_path):
    code, _, err = run_cli(["search-problem1", "--n", "6"])
    assert code == 2 and "guard" in err
    code, _, err = run_cli(["search-problem1", "--n", "5"])
    assert code == 2 and "--yes" in err
    big = tmp_path / "m.txt"
    run_cli(["gen", "random-metric", "--n", "11", "--seed", "1", "-o", str(big)])
    code, _, err = run_cli(["order", "--strategy", "brute", "--input", str(big)])
    assert code == 2


def test_search_n4_report(tmp_path):
    out_path = tmp_path / "r.json"
    code, _, _ = run_cli(["search-problem1", "--n", "4", "-o", str(out_path)])
    assert code == 0
    rep = json.loads(out_path.read_text())
    assert rep["n"] == 4
    assert rep["orderings_scanned"] == 720
    assert rep["max_sum"] == "1/1"
    assert rep["counterexamples"] == []
    assert rep["witnesses_at_one"] == 336
    assert rep["canonical"] is False


def test_search_counterexample_exits_3(monkeypatch):
    fake = oracle.Problem1Report(
        n=3,
        canonical=False,
        orderings_scanned=6,
        max_sum=Fraction(5, 4),
        witnesses_at_one=0,
        counterexamples=(((0, 1, 2), Fraction(5, 4)),),
    )
    monkeypatch.setattr(oracle, "problem1_search", lambda n, canonical, jobs: fake)
    code, out, _ = run_cli(["search-problem1", "--n", "3"])
    assert code == 3
    rep = json.loads(out)
    assert rep["max_sum"] == "5/4"
    assert rep["counterexamples"] == [
        {"pairs": [[0, 1, 0], [0, 2, 1], [1, 2, 2]], "sum": "5/4"}
    ]


def test_search_deterministic_across_jobs():
    a = run_cli(["search-problem1", "--n", "4", "--jobs", "1"])
    b = run_cli(["search-problem1", "--n", "4", "--jobs", "2"])
    assert a == b
