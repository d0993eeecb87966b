"""Command-line driver: documents or points in, matrices/schedules/dendrograms out.

Exit codes: 0 success, 2 usage or configuration error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .closure import transitive_closure
from .errors import FuzzyClusterError
from .ingest import (
    StopWordSet,
    build_keyword_table,
    occurrence_points,
    read_documents,
    tf_vectors,
)
from .partition import alpha_cut, build_dendrogram, partition_schedule
from .relation import compatibility_relation, read_points_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3

DUMPS = ("keywords", "occurrences", "relation", "closure", "schedule", "dendrogram")
FORMATS = ("text", "json", "dot", "csv")

# which (dump, format) pairs have a rendering
_SUPPORTED = {
    "keywords": {"text", "json", "csv"},
    "occurrences": {"text", "json", "csv"},
    "relation": {"text", "json", "csv"},
    "closure": {"text", "json", "csv"},
    "schedule": {"text", "json"},
    "dendrogram": {"text", "json", "dot"},
}


@dataclass
class PipelineConfig:
    input_path: Path
    input_mode: str = "docs"
    vector_mode: str = "occurrence"
    q: float = 2.0
    min_df: int = 1
    stopwords_path: Path | None = None
    alpha: float | None = None
    output_format: str = "text"
    dump: tuple[str, ...] = ("schedule", "dendrogram")
    out_path: Path | None = None


class _Stage:
    """Tags data errors with the pipeline stage that raised them."""

    def __init__(self, name):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None and issubclass(exc_type, (FuzzyClusterError, ValueError, OSError)):
            raise PipelineError(self.name, str(exc)) from exc
        return False


class PipelineError(Exception):
    def __init__(self, stage, message):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError("q must be > 0")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("min-df must be >= 1")
    return value


def _unit_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("alpha must lie in [0, 1]")
    return value


def _dump_list(text):
    items = [item.strip() for item in text.split(",") if item.strip()]
    bad = [item for item in items if item not in DUMPS]
    if bad or not items:
        raise argparse.ArgumentTypeError(
            f"unknown dump {', '.join(bad) or text!r}; choose from {', '.join(DUMPS)}"
        )
    return tuple(dict.fromkeys(items))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyhc",
        description="Fuzzy hierarchical clustering via max-min transitive closure and alpha-cuts.",
    )
    parser.add_argument("--input", required=True, type=Path, metavar="PATH",
                        help="directory of text documents, or a points CSV with --mode points")
    parser.add_argument("--mode", choices=("docs", "points"), default="docs")
    parser.add_argument("--vector", choices=("occurrence", "tf"), default="occurrence",
                        help="docs mode: (doc_id, keyword_id) occurrence points or term-count vectors")
    parser.add_argument("--q", type=_positive_float, default=2.0, metavar="REAL",
                        help="Minkowski exponent (1 = city block, 2 = Euclidean; default 2)")
    parser.add_argument("--min-df", type=_positive_int, default=1, metavar="INT",
                        help="minimum number of documents a keyword must occur in")
    parser.add_argument("--stopwords", type=Path, metavar="PATH",
                        help="stop-word file, one word per line, '#' comments")
    parser.add_argument("--alpha", type=_unit_float, metavar="REAL",
                        help="print only the partition at this alpha level")
    parser.add_argument("--dump", type=_dump_list, default=("schedule", "dendrogram"),
                        metavar="LIST", help=f"comma-separated subset of: {','.join(DUMPS)}")
    parser.add_argument("--format", choices=FORMATS, default="text")
    parser.add_argument("--out", type=Path, metavar="PATH", help="write output here instead of stdout")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def parse_args(argv=None) -> PipelineConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.alpha is None:
        for name in ns.dump:
            if ns.format not in _SUPPORTED[name]:
                parser.error(f"--format {ns.format} is not available for --dump {name}")
        if ns.mode == "points" and set(ns.dump) & {"keywords", "occurrences"}:
            parser.error("keywords/occurrences dumps need --mode docs")
    elif ns.format not in {"text", "json"}:
        parser.error("--alpha output supports --format text or json")
    return PipelineConfig(
        input_path=ns.input,
        input_mode=ns.mode,
        vector_mode=ns.vector,
        q=ns.q,
        min_df=ns.min_df,
        stopwords_path=ns.stopwords,
        alpha=ns.alpha,
        output_format=ns.format,
        dump=ns.dump,
        out_path=ns.out,
    )


def _render(name, fmt, artifacts) -> str:
    if name == "keywords":
        table = artifacts["keywords"]
        if fmt == "json":
            return table.to_json()
        if fmt == "csv":
            return "id,keyword\n" + "".join(f"{i},{kw}\n" for i, kw in table.entries)
        return "KEYWORD ID\tKEYWORD\n" + "".join(f"{i}\t{kw}\n" for i, kw in table.entries)
    if name == "occurrences":
        occ = artifacts["occurrences"]
        if fmt == "json":
            return json.dumps([
                {"label": o.label, "keyword_id": o.keyword_id, "doc_id": o.doc_id} for o in occ.pairs
            ])
        if fmt == "csv":
            return occ.to_csv()
        return occ.to_csv().replace(",", "\t")
    if name == "relation":
        rel, params = artifacts["relation"], artifacts["params"]
        if fmt == "json":
            return rel.to_json(q=params.q, delta=params.delta)
        if fmt == "csv":
            return rel.to_csv()
        return f"q = {params.q:g}, delta = {params.delta:.6g}\n" + rel.to_text()
    if name == "closure":
        rt, rounds = artifacts["closure"], artifacts["iterations"]
        if fmt == "json":
            return rt.to_json(iterations=rounds)
        if fmt == "csv":
            return rt.to_csv()
        return f"iterations = {rounds}\n" + rt.to_text()
    if name == "schedule":
        sched = artifacts["schedule"]
        return sched.to_json() if fmt == "json" else sched.to_text()
    if name == "dendrogram":
        tree = artifacts["dendrogram"]
        return {"json": tree.to_json, "dot": tree.to_dot}.get(fmt, tree.to_text)()
    raise KeyError(name)


def _combine(pieces: list[tuple[str, str]], fmt: str) -> str:
    if len(pieces) == 1:
        text = pieces[0][1]
    elif fmt == "json":
        text = "{" + ", ".join(f"{json.dumps(name)}: {body}" for name, body in pieces) + "}"
    else:
        marker = "#" if fmt == "csv" else "=="
        text = "\n".join(f"{marker} {name}\n{body.rstrip(chr(10))}\n" for name, body in pieces)
    return text if text.endswith("\n") else text + "\n"


def compute(config: PipelineConfig) -> dict:
    """Run every stage and return the intermediate artifacts by name."""
    artifacts = {}
    if config.input_mode == "docs":
        with _Stage("ingest"):
            stops = (StopWordSet.from_file(config.stopwords_path)
                     if config.stopwords_path else StopWordSet())
            docs = read_documents(config.input_path, stops)
            table = build_keyword_table(docs, config.min_df)
            artifacts["keywords"] = table
            occ, data = occurrence_points(docs, table)
            artifacts["occurrences"] = occ
            if config.vector_mode == "tf":
                data = tf_vectors(docs, table)
    else:
        with _Stage("ingest"):
            path = Path(config.input_path)
            if not path.is_file():
                raise PipelineError("ingest", f"points file not found: {path}")
            data = read_points_csv(path.read_bytes().decode("utf-8"))
    artifacts["dataset"] = data
    with _Stage("relation"):
        rel, params = compatibility_relation(data, config.q)
    artifacts["relation"], artifacts["params"] = rel, params
    with _Stage("closure"):
        rt, rounds = transitive_closure(rel)
    artifacts["closure"], artifacts["iterations"] = rt, rounds
    with _Stage("partition"):
        sched = partition_schedule(rt)
        artifacts["schedule"] = sched
        artifacts["dendrogram"] = build_dendrogram(sched)
        if config.alpha is not None:
            artifacts["alpha_cut"] = alpha_cut(rt, config.alpha)
    return artifacts


def run_pipeline(config: PipelineConfig, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        artifacts = compute(config)
    except PipelineError as exc:
        print(f"fuzzyhc: error in {exc}", file=stderr)
        return EXIT_DATA
    except UnicodeDecodeError as exc:
        print(f"fuzzyhc: error in ingest: undecodable byte at offset {exc.start}", file=stderr)
        return EXIT_DATA

    if config.alpha is not None:
        part = artifacts["alpha_cut"]
        if config.output_format == "json":
            text = json.dumps({"alpha": config.alpha, "blocks": part.label_blocks()}) + "\n"
        else:
            text = part.to_text() + "\n"
    else:
        pieces = [(name, _render(name, config.output_format, artifacts)) for name in config.dump]
        text = _combine(pieces, config.output_format)

    if config.out_path is not None:
        try:
            Path(config.out_path).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"fuzzyhc: error in output: {exc}", file=stderr)
            return EXIT_USAGE
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        config = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run_pipeline(config)


if __name__ == "__main__":
    sys.exit(main())
