"""Command-line interface.

Counts and logs are printed as stable ``key=value`` lines; graphs are written
only to ``--output`` (or to stdout when the format is requested explicitly).
Exit status: 0 on success, 1 on usage or input errors, 2 when an internal
invariant or lemma check fails.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from . import formats, pg_search, verifier
from .generator import InfeasibleSpec, enumerate_triangulations, parse_spec
from .plane_graph import PlaneGraph, PlaneGraphError

__all__ = ["CommandConfig", "UsageError", "build_parser", "parse_config", "run", "main"]

GRAPH_FORMATS = ("planar_code", "ascii")


class UsageError(Exception):
    pass


class InvariantViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CommandConfig:
    subcommand: str
    options: dict = field(default_factory=dict)

    def __getattr__(self, name):
        try:
            return self.options[name]
        except KeyError:
            raise AttributeError(name) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pentagulation", description="Minimal 3-connected pentagulations of polygons.")
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    def workers(sp):
        sp.add_argument("--workers", type=int, default=os.cpu_count() or 1, help="worker processes")

    gen = sub.add_parser("gen", help="enumerate triangulations with a degree spec")
    gen.add_argument("--spec", required=True, help='e.g. "18:6x2,7x2" (non-5 degrees) or "9:any"')
    gen.add_argument("--count", action="store_true", help="print only the number of classes")
    gen.add_argument("--format", choices=GRAPH_FORMATS, help="default: planar_code to a file, ascii to stdout")
    gen.add_argument("--output", help="write graphs here instead of stdout")
    gen.add_argument("--no-prune", action="store_true")
    workers(gen)

    pg = sub.add_parser("pg", help="compute Pg(n)")
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--max-surplus", type=int, default=3)
    pg.add_argument("--log", action="store_true", help="print one search-log line per degree spec")
    pg.add_argument("--output", help="write the minimal pentagulations (planar_code)")
    workers(pg)

    cl = sub.add_parser("classify", help="pentagulations of an n-gon with a fixed surplus")
    cl.add_argument("--n", type=int, required=True)
    cl.add_argument("--surplus", type=int, required=True)
    cl.add_argument("--format", choices=GRAPH_FORMATS, default="ascii")
    cl.add_argument("--output")
    workers(cl)

    gn = sub.add_parser("gn", help="build and validate the explicit pentagulation G_n")
    gn.add_argument("--n", type=int, required=True)
    gn.add_argument("--format", choices=GRAPH_FORMATS, default="planar_code")
    gn.add_argument("--output", help="graph file (use - for stdout)")

    bd = sub.add_parser("bound", help="upper bound from the explicit construction")
    bd.add_argument("--n", type=int, required=True)

    vf = sub.add_parser("verify", help="lemma sweep over a stream of triangulations")
    vf.add_argument("--input", required=True, help="graph file, - for stdin")
    vf.add_argument("--format", choices=GRAPH_FORMATS, default="planar_code")
    vf.add_argument("--verbose", action="store_true", help="print every report")

    cv = sub.add_parser("convert", help="transcode graph files")
    cv.add_argument("--input", required=True)
    cv.add_argument("--from", dest="src", choices=GRAPH_FORMATS, required=True)
    cv.add_argument("--to", dest="dst", choices=GRAPH_FORMATS + ("dot",), required=True)
    cv.add_argument("--output", default="-")

    dr = sub.add_parser("draw", help="Tutte drawing as SVG")
    dr.add_argument("--input", required=True)
    dr.add_argument("--format", choices=GRAPH_FORMATS, default="planar_code")
    dr.add_argument("--index", type=int, default=0, help="which graph of the stream")
    dr.add_argument("--outer", type=int, help="outer face index (default: largest face)")
    dr.add_argument("--leader", type=int, help="omit this vertex; its link becomes the outer cycle")
    dr.add_argument("--highlight", default="", help='edges to emphasise, e.g. "0-4,7-9"')
    dr.add_argument("--output", default="-")
    return p


def parse_config(argv: Sequence[str]) -> CommandConfig:
    ns = vars(build_parser().parse_args(list(argv)))
    sub = ns.pop("subcommand")
    return CommandConfig(sub, ns)


# -- io helpers --------------------------------------------------------------------

def _read_graphs(path: str, fmt: str) -> list[PlaneGraph]:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if fmt == "planar_code":
        return formats.parse_planar_code(data)
    return formats.parse_ascii_stream(data.decode("ascii"))


def _encode(graphs: Sequence[PlaneGraph], fmt: str) -> bytes:
    if fmt == "planar_code":
        return formats.write_planar_code(graphs)
    if fmt == "dot":
        return "".join(formats.render_dot(g, f"G{i}") for i, g in enumerate(graphs)).encode()
    return "".join(formats.write_ascii_adjacency(g) + "\n" for g in graphs).encode()


def _write(path: str | None, data: bytes, out: TextIO) -> None:
    if path in (None, "-"):
        out.flush()
        buf = getattr(out, "buffer", None)
        if buf is not None:
            buf.write(data)
            buf.flush()
        else:
            out.write(data.decode("latin-1"))
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _positive(value: int, name: str) -> int:
    if value < 1:
        raise UsageError(f"--{name} must be positive")
    return value


# -- subcommands -------------------------------------------------------------------

def _cmd_gen(cfg: CommandConfig, out: TextIO) -> int:
    try:
        spec = parse_spec(cfg.spec)
        spec.check()
    except (InfeasibleSpec, ValueError) as exc:
        raise UsageError(f"bad spec {cfg.spec!r}: {exc}") from exc
    graphs = enumerate_triangulations(spec, prune=not cfg.no_prune, workers=_positive(cfg.workers, "workers"))
    if cfg.count:
        print(len(graphs), file=out)
        return 0
    fmt = cfg.format or ("planar_code" if cfg.output not in (None, "-") else "ascii")
    _write(cfg.output, _encode(graphs, fmt), out)
    if cfg.output:
        print(f"spec={spec} triangulations={len(graphs)} output={cfg.output}", file=out)
    return 0


def _cmd_pg(cfg: CommandConfig, out: TextIO) -> int:
    if cfg.n < 3 or cfg.max_surplus < 0:
        raise UsageError("need --n >= 3 and --max-surplus >= 0")
    hook = (lambda e: print(e, file=out, flush=True)) if cfg.log else None
    res = pg_search.compute_pg(cfg.n, cfg.max_surplus, _positive(cfg.workers, "workers"), hook)
    print(res, file=out)
    if cfg.output and res.classes:
        _write(cfg.output, formats.write_planar_code([r.graph for r in res.classes]), out)
    return 0


def _cmd_classify(cfg: CommandConfig, out: TextIO) -> int:
    if cfg.n < 3 or cfg.surplus < 0:
        raise UsageError("need --n >= 3 and --surplus >= 0")
    recs = pg_search.classify_minimal(cfg.n, cfg.surplus, _positive(cfg.workers, "workers"))
    print(f"n={cfg.n} surplus={cfg.surplus} classes={len(recs)}", file=out)
    if cfg.output:
        _write(cfg.output, _encode([r.graph for r in recs], cfg.format), out)
    return 0


def _cmd_gn(cfg: CommandConfig, out: TextIO) -> int:
    if cfg.n < 13:
        raise UsageError("the explicit construction needs --n >= 13")
    try:
        g = pg_search.construct_gn(cfg.n)
    except pg_search.ConstructionInvalid as exc:
        raise InvariantViolation(str(exc)) from exc
    print(f"V={g.vertex_count} E={g.edge_count} F={g.face_count} valid", file=out)
    if cfg.output:
        _write(cfg.output, _encode([g], cfg.format), out)
    return 0


def _cmd_bound(cfg: CommandConfig, out: TextIO) -> int:
    if cfg.n < 13:
        raise UsageError("the bound is defined for --n >= 13")
    k, l = pg_search.decompose_5k3l(cfg.n)
    print(f"n={cfg.n} k={k} l={l} bound={pg_search.pg_upper_bound(cfg.n)}", file=out)
    return 0


def _cmd_verify(cfg: CommandConfig, out: TextIO) -> int:
    graphs = _read_graphs(cfg.input, cfg.format)
    tally, bad = Counter(), []
    for g in graphs:
        if not g.is_triangulation():
            raise UsageError("verify expects triangulations")
        for rep in verifier.sweep_triangulation(g):
            tally[(rep.lemma, rep.verdict.value)] += 1
            if cfg.verbose or rep.verdict is verifier.Verdict.VIOLATED:
                print(rep.line(), file=out)
                if rep.verdict is verifier.Verdict.VIOLATED:
                    bad.append(rep)
    for (lemma, verdict), count in sorted(tally.items()):
        print(f"lemma={lemma} verdict={verdict} count={count}", file=out)
    print(f"graphs={len(graphs)} violations={len(bad)}", file=out)
    if bad:
        raise InvariantViolation(f"{len(bad)} lemma violations")
    return 0


def _cmd_convert(cfg: CommandConfig, out: TextIO) -> int:
    graphs = _read_graphs(cfg.input, cfg.src)
    _write(cfg.output, _encode(graphs, cfg.dst), out)
    return 0


def _parse_edges(text: str) -> frozenset:
    edges = set()
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            a, b = (int(x) for x in item.split("-"))
        except ValueError as exc:
            raise UsageError(f"bad edge {item!r}") from exc
        edges.add((min(a, b), max(a, b)))
    return frozenset(edges)


def _cmd_draw(cfg: CommandConfig, out: TextIO) -> int:
    graphs = _read_graphs(cfg.input, cfg.format)
    if not 0 <= cfg.index < len(graphs):
        raise UsageError(f"--index out of range (stream has {len(graphs)} graphs)")
    g = graphs[cfg.index]
    try:
        if cfg.leader is not None:
            coords = formats.leader_layout(g, cfg.leader)
        else:
            coords = formats.tutte_layout(g, cfg.outer)
    except formats.NotThreeConnected as exc:
        raise UsageError(str(exc)) from exc
    except formats.SolveFailed as exc:
        raise InvariantViolation(str(exc)) from exc
    opts = formats.SvgOptions(leader=cfg.leader, highlight=_parse_edges(cfg.highlight))
    _write(cfg.output, formats.render_svg(g, coords, opts).encode(), out)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "pg": _cmd_pg,
    "classify": _cmd_classify,
    "gn": _cmd_gn,
    "bound": _cmd_bound,
    "verify": _cmd_verify,
    "convert": _cmd_convert,
    "draw": _cmd_draw,
}


def run(config: CommandConfig | Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg = config if isinstance(config, CommandConfig) else parse_config(config)
        return _COMMANDS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        print(f"error=usage message={exc}", file=err)
        return 1
    except (formats.FormatError, PlaneGraphError) as exc:
        print(f"error=input kind={type(exc).__name__} message={exc}", file=err)
        return 1
    except InvariantViolation as exc:
        print(f"error=invariant message={exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
