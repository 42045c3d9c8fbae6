"""Command-line front end.

Exit codes: 0 success, 1 a verification found a failing report, 2 usage
error, 64 a precondition of the computation failed, 65 graph file parse
error, 66 graph file not found.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from . import brill_noether as bn
from .divisors import dhar_reduce, gonality, rank_r
from .errors import BNLatticeError
from .geometry import (
    Gauge,
    covering_lower_certificate,
    covering_radius_sampled,
    integral_covering_radius,
    rank_geometric,
)
from .graph import (
    GraphParseError,
    Multigraph,
    format_graph,
    genus,
    is_dense,
    parse_graph,
    spanning_tree_count,
    stretch_factor,
)
from .orientations import nonspecial_set

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 64
EXIT_PARSE = 65
EXIT_NO_FILE = 66

COMMANDS = ("info", "rank", "reduce", "nonspecial", "covrad", "intcovrad", "bn-scan", "verify", "gonality", "bounds")
VERIFY_MAX_GENUS = 8
VERIFY_MAX_CLASSES = 10**6


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def parse_divisor(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise argparse.ArgumentTypeError(f"bad divisor literal: {text!r}")
    return tuple(parse_rational(p) for p in parts)


def parse_gauge(text: str) -> Gauge:
    t = text.strip()
    if t in ("simplex", "cosimplex", "ell1"):
        return Gauge(t)
    parts = t.split(":")
    if len(parts) == 3 and parts[0] == "P":
        a, b = parse_rational(parts[1]), parse_rational(parts[2])
        try:
            return Gauge.minkowski(a, b)
        except BNLatticeError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError(f"bad gauge {text!r}; use simplex, cosimplex, ell1 or P:<a>:<b>")


@dataclass
class Command:
    name: str
    graph_path: Path
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bnlattice", description="Divisor ranks, lattice covering radii and Brill-Noether scans on multigraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("graph", type=Path, help="graph file ('graph <n>' then 'e <u> <v> [mult]' lines)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--base", type=int, default=0, help="base vertex (default 0)")
        return sp

    sp = add("info", "graph invariants")
    sp.add_argument("--emit", action="store_true", help="print the graph back in canonical text form")
    sp = add("rank", "rank of an integer or rational divisor")
    sp.add_argument("--divisor", type=parse_divisor, required=True)
    sp.add_argument("--method", choices=("degplus", "geometric"), default="degplus")
    sp = add("reduce", "reduced representative of an integer divisor")
    sp.add_argument("--divisor", type=parse_divisor, required=True)
    add("nonspecial", "orbit representatives of the non-special set")
    sp = add("covrad", "sampled covering radius and certified lower bound")
    sp.add_argument("--gauge", type=parse_gauge, default=Gauge.simplex())
    sp.add_argument("--grid", type=int, default=4)
    sp = add("intcovrad", "integral covering radius of the non-special set")
    sp.add_argument("--gauge", type=parse_gauge, default=Gauge.ell1())
    sp = add("bn-scan", "maximum rank over all classes of one degree")
    sp.add_argument("--degree", type=int, required=True)
    sp = add("verify", "existence scan over all degrees 0..2g-2")
    sp.add_argument("--force", action="store_true", help="skip the size guards")
    add("gonality", "gonality by exhaustive scan, with the upper bound")
    sp = add("bounds", "stretch factor, density and degree bounds")
    sp.add_argument("--k", type=int, default=1, help="rank for the real gonality bound")
    return p


def parse_args(argv: list[str]) -> Command:
    ns = _build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(ns).items() if k not in ("command", "graph")}
    if ns.command == "covrad" and ns.grid < 1:
        raise UsageError("--grid must be >= 1")
    if ns.command == "bounds" and ns.k < 1:
        raise UsageError("--k must be >= 1")
    return Command(ns.command, ns.graph, opts)


def _fmt(x) -> str:
    return str(Fraction(x)) if not isinstance(x, str) else x


def _vec(xs) -> list[str] | list[int]:
    return [int(x) if Fraction(x).denominator == 1 else _fmt(x) for x in xs]


def _vec_text(xs) -> str:
    return ",".join(_fmt(x) for x in xs)


def load_graph(path: Path) -> Multigraph:
    text = path.read_text()
    return parse_graph(text, name=path.stem)


def _check_divisor(G: Multigraph, D) -> None:
    if len(D) != G.n:
        raise BNLatticeError(f"divisor has {len(D)} entries, graph has {G.n} vertices")


def _check_base(G: Multigraph, q: int) -> None:
    if not 0 <= q < G.n:
        raise BNLatticeError(f"base vertex {q} out of range")


def run(cmd: Command, out: TextIO = sys.stdout) -> int:
    G = load_graph(cmd.graph_path)
    o = cmd.options
    q = o.get("base", 0)
    _check_base(G, q)
    as_json = o.get("json", False)

    def emit(obj: dict, text: str) -> None:
        out.write((json.dumps(obj) if as_json else text) + "\n")

    if cmd.name == "info":
        if o.get("emit"):
            out.write(format_graph(G))
            return EXIT_OK
        g = genus(G)
        info = {"graph": G.name, "n": G.n, "m": G.m, "genus": g, "stretchFactor": stretch_factor(G), "dense": is_dense(G)}
        emit(info, f"n={G.n} m={G.m} g={g} Γ={info['stretchFactor']} dense={str(info['dense']).lower()}")
        return EXIT_OK

    if cmd.name == "reduce":
        D = o["divisor"]
        _check_divisor(G, D)
        if any(x.denominator != 1 for x in D):
            raise BNLatticeError("reduce needs an integer divisor")
        cls, f = dhar_reduce(G, [int(x) for x in D], q)
        emit({"reduced": list(cls.reduced), "firing": list(f), "base": q}, f"reduced {_vec_text(cls.reduced)}\nfiring {_vec_text(f)}")
        return EXIT_OK

    N = nonspecial_set(G, q)

    if cmd.name == "rank":
        D = o["divisor"]
        _check_divisor(G, D)
        r = rank_geometric(G, D, N) if o["method"] == "geometric" else rank_r(G, D, N)
        emit({"value": _fmt(r)}, _fmt(r))
        return EXIT_OK

    if cmd.name == "nonspecial":
        emit({"base": q, "reps": [list(nu) for nu in N.reps]}, "\n".join(_vec_text(nu) for nu in N.reps))
        return EXIT_OK

    if cmd.name == "covrad":
        gauge = o["gauge"]
        sampled = covering_radius_sampled(G, gauge, N, o["grid"])
        cert = covering_lower_certificate(G, gauge, N)
        obj = {
            "gauge": str(gauge),
            "grid": o["grid"],
            "value": _fmt(sampled.value),
            "samplePoint": _vec(sampled.point),
            "certificate": _fmt(cert.value),
            "certificateKind": cert.kind,
            "certificatePoint": _vec(cert.point),
        }
        text = (f"sampled {_fmt(sampled.value)} at {_vec_text(sampled.point)}\n"
                f"certificate {_fmt(cert.value)} ({cert.kind}) at {_vec_text(cert.point)}")
        emit(obj, text)
        return EXIT_OK

    if cmd.name == "intcovrad":
        v = integral_covering_radius(G, o["gauge"], N)
        emit({"value": _fmt(v)}, _fmt(v))
        return EXIT_OK

    if cmd.name == "bn-scan":
        rep = bn.bn_scan(G, o["degree"], N)
        emit(rep.to_dict(), _report_line(rep))
        return EXIT_OK

    if cmd.name == "verify":
        g = genus(G)
        classes = spanning_tree_count(G)
        if not o.get("force"):
            if g > VERIFY_MAX_GENUS:
                raise BNLatticeError(f"genus {g} > {VERIFY_MAX_GENUS}; use --force")
            if classes > VERIFY_MAX_CLASSES:
                raise BNLatticeError(f"{classes} classes per degree > {VERIFY_MAX_CLASSES}; use --force")
        reports = bn.verify_existence(G, N)
        if as_json:
            out.write(json.dumps([r.to_dict() for r in reports]) + "\n")
        else:
            for r in reports:
                out.write(_report_line(r) + "\n")
        return EXIT_VERIFY_FAILED if any(r.verdict == bn.EXISTENCE_FAILS for r in reports) else EXIT_OK

    if cmd.name == "gonality":
        k = gonality(G, N)
        bound = bn.gonality_bound_approx(G)
        emit({"value": _fmt(k), "bound": bound}, f"{k} (bound {bound})")
        return EXIT_OK

    if cmd.name == "bounds":
        g = genus(G)
        obj = {
            "stretchFactor": stretch_factor(G),
            "dense": is_dense(G),
            "denseHypothesis": bn.dense_eq_hypothesis(G),
            "gonalityBound": bn.gonality_bound_approx(G),
            "realGonalityBound": bn.r_gonality_bound(G, o["k"]),
            "k": o["k"],
            "bnBoundAtGminus1": bn.bn_bound(g, g - 1),
        }
        emit(obj, "\n".join(f"{k} {str(v).lower() if isinstance(v, bool) else v}" for k, v in obj.items()))
        return EXIT_OK

    raise UsageError(f"unknown command {cmd.name}")  # unreachable through parse_args


def _report_line(r: bn.BNReport) -> str:
    return f"d={r.d} maxRank={r.max_rank} bnBound={r.bn_bound} witness={_vec_text(r.witness.reduced)} {r.verdict}"


def main(argv: list[str] | None = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_args(argv)
    except UsageError as exc:
        _build_parser().print_usage(err)
        err.write(f"{exc}\n")
        return EXIT_USAGE
    try:
        return run(cmd, out)
    except FileNotFoundError:
        err.write(f"bnlattice: no such file: {cmd.graph_path}\n")
        return EXIT_NO_FILE
    except GraphParseError as exc:
        err.write(f"bnlattice: {cmd.graph_path}: {exc}\n")
        return EXIT_PARSE
    except BNLatticeError as exc:
        err.write(f"bnlattice: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
