import io
import json
import subprocess
import sys

import numpy as np
import pytest

from fuzzyhc import FuzzyRelation
from fuzzyhc.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main, parse_args, run_pipeline

CLOSURE_Q2_TEXT = """\
iterations = 3
x1\tx2\tx3\tx4\tx5\tx6
1.0\t0.72\t0.72\t0.72\t0.72\t0.72
0.72\t1.0\t0.8\t0.72\t0.72\t0.72
0.72\t0.8\t1.0\t0.72\t0.72\t0.72
0.72\t0.72\t0.72\t1.0\t0.72\t0.72
0.72\t0.72\t0.72\t0.72\t1.0\t0.72
0.72\t0.72\t0.72\t0.72\t0.72\t1.0
"""

SCHEDULE_Q1_TEXT = """\
Alpha cuts\tMembers
[0.0, 0.71]\t{x1,x2,x3,x4,x5,x6}
(0.71, 0.86]\t{x1}, {x2,x3}, {x4}, {x5}, {x6}
(0.86, 1.0]\t{x1}, {x2}, {x3}, {x4}, {x5}, {x6}
"""


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_pipeline(parse_args(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestParseArgs:
    def test_mapping(self):
        cfg = parse_args(["--input", "pts.csv", "--mode", "points", "--q", "1"])
        assert cfg.q == 1.0 and cfg.input_mode == "points"
        assert cfg.min_df == 1 and cfg.output_format == "text" and cfg.alpha is None

    def test_full(self):
        cfg = parse_args(["--input", "d", "--vector", "tf", "--min-df", "2", "--alpha", "0.5",
                          "--dump", "relation,closure", "--format", "json", "--out", "o.json"])
        assert cfg.vector_mode == "tf" and cfg.min_df == 2 and cfg.alpha == 0.5
        assert cfg.dump == ("relation", "closure")

    @pytest.mark.parametrize("argv", [
        [],
        ["--q", "0"],
        ["--input", "x", "--q", "0"],
        ["--input", "x", "--q", "-1"],
        ["--input", "x", "--alpha", "1.2"],
        ["--input", "x", "--min-df", "0"],
        ["--input", "x", "--dump", "bogus"],
        ["--input", "x", "--bogus"],
        ["--input", "x", "--dump", "closure", "--format", "dot"],
        ["--input", "x", "--mode", "points", "--dump", "keywords"],
    ])
    def test_usage_errors(self, argv, capsys):
        with pytest.raises(SystemExit) as exc:
            parse_args(argv)
        assert exc.value.code == EXIT_USAGE
        assert "usage" in capsys.readouterr().err


class TestRunPipeline:
    def test_closure_q2_from_points(self, points_csv):
        code, out, _ = run(["--input", str(points_csv), "--mode", "points", "--q", "2", "--dump", "closure"])
        assert code == EXIT_OK
        assert out == CLOSURE_Q2_TEXT

    def test_schedule_q1_from_points(self, points_csv):
        code, out, _ = run(["--input", str(points_csv), "--mode", "points", "--q", "1", "--dump", "schedule"])
        assert code == EXIT_OK and out == SCHEDULE_Q1_TEXT

    def test_docs_mode_matches_points_mode(self, corpus_dir, points_csv):
        a = run(["--input", str(corpus_dir), "--dump", "closure,schedule,dendrogram"])
        b = run(["--input", str(points_csv), "--mode", "points", "--dump", "closure,schedule,dendrogram"])
        assert a == b

    def test_empty_directory(self, tmp_path):
        code, out, err = run(["--input", str(tmp_path)])
        assert code == EXIT_DATA and out == ""
        assert "ingest" in err and "no input documents" in err

    def test_empty_vocabulary(self, tmp_path):
        (tmp_path / "a.txt").write_text("the and a")
        code, _, err = run(["--input", str(tmp_path)])
        assert code == EXIT_DATA and "empty vocabulary" in err

    def test_degenerate(self, tmp_path):
        pts = tmp_path / "pts.csv"
        pts.write_text("a,b\n1,2\n1,2\n")
        code, _, err = run(["--input", str(pts), "--mode", "points"])
        assert code == EXIT_DATA and "relation" in err and "zero diameter" in err

    def test_single_point(self, tmp_path):
        (tmp_path / "a.txt").write_text("web")
        code, _, err = run(["--input", str(tmp_path)])
        assert code == EXIT_DATA and "at least two points" in err

    def test_undecodable(self, tmp_path):
        (tmp_path / "bad.txt").write_bytes(b"\xfe\xff")
        code, _, err = run(["--input", str(tmp_path)])
        assert code == EXIT_DATA and "bad.txt" in err and "offset 0" in err

    def test_missing_points_file(self, tmp_path):
        code, _, err = run(["--input", str(tmp_path / "nope.csv"), "--mode", "points"])
        assert code == EXIT_DATA

    def test_alpha_query(self, points_csv):
        code, out, _ = run(["--input", str(points_csv), "--mode", "points", "--alpha", "0.75"])
        assert code == EXIT_OK and out == "{x1}, {x2,x3}, {x4}, {x5}, {x6}\n"
        code, out, _ = run(["--input", str(points_csv), "--mode", "points", "--alpha", "0.75", "--format", "json"])
        assert json.loads(out)["blocks"][1] == ["x2", "x3"]

    def test_json_round_trip(self, corpus_dir):
        from fuzzyhc.cli import compute
        cfg = parse_args(["--input", str(corpus_dir), "--dump", "closure", "--format", "json"])
        _, out, _ = run(["--input", str(corpus_dir), "--dump", "closure", "--format", "json"])
        payload = json.loads(out)
        back = FuzzyRelation(payload["values"], payload["labels"])
        assert np.array_equal(back.values, compute(cfg)["closure"].values)
        assert payload["iterations"] == 3

    def test_json_multiple_dumps(self, corpus_dir):
        _, out, _ = run(["--input", str(corpus_dir), "--dump", "keywords,relation,schedule,dendrogram",
                         "--format", "json"])
        payload = json.loads(out)
        assert list(payload) == ["keywords", "relation", "schedule", "dendrogram"]
        assert payload["relation"]["delta"] == pytest.approx(0.2)

    def test_csv_dumps(self, corpus_dir):
        _, out, _ = run(["--input", str(corpus_dir), "--dump", "occurrences,relation", "--format", "csv"])
        assert "# occurrences\nlabel,keyword_id,doc_id\nx1,0,0\n" in out
        assert "# relation\n,x1,x2,x3,x4,x5,x6\n" in out

    def test_dot(self, corpus_dir):
        _, out, _ = run(["--input", str(corpus_dir), "--dump", "dendrogram", "--format", "dot"])
        assert out.startswith("digraph dendrogram {")

    def test_tf_mode(self, corpus_dir):
        code, out, _ = run(["--input", str(corpus_dir), "--vector", "tf", "--dump", "schedule"])
        assert code == EXIT_OK and "doc1.txt" in out

    def test_min_df_and_stopwords(self, corpus_dir, tmp_path):
        stops = tmp_path / "stops.txt"
        stops.write_text("# drop one keyword\nthe\nan\na\non\nand\nin\nweb\n")
        code, out, _ = run(["--input", str(corpus_dir), "--stopwords", str(stops), "--dump", "keywords"])
        assert code == EXIT_OK and "web" not in out
        code, out, _ = run(["--input", str(corpus_dir), "--min-df", "2", "--dump", "keywords"])
        assert out == "KEYWORD ID\tKEYWORD\n0\tcluster\n"

    def test_out_file(self, corpus_dir, tmp_path):
        target = tmp_path / "sched.txt"
        code, out, _ = run(["--input", str(corpus_dir), "--dump", "schedule", "--out", str(target)])
        assert code == EXIT_OK and out == ""
        assert target.read_text().startswith("Alpha cuts")

    def test_deterministic(self, corpus_dir):
        argv = ["--input", str(corpus_dir), "--dump", ",".join(
            ["keywords", "occurrences", "relation", "closure", "schedule", "dendrogram"]), "--format", "json"]
        assert run(argv) == run(argv)


def test_main_exit_codes(points_csv, capsys):
    assert main(["--input", str(points_csv), "--mode", "points"]) == EXIT_OK
    assert main(["--q", "0"]) == EXIT_USAGE
    capsys.readouterr()


def test_module_entry_point(points_csv):
    proc = subprocess.run(
        [sys.executable, "-m", "fuzzyhc", "--input", str(points_csv), "--mode", "points", "--dump", "closure"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == CLOSURE_Q2_TEXT
