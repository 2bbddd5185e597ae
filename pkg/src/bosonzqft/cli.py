"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import bell
from .bell import WeightSequence, preset, preset_names
from .boson import WordSpec, normal_order_exp, normal_order_word
from .zqft import (
    MAX_GRAPH_LINES,
    CountingProblem,
    closed_form_series,
    graph_oracle,
    z_series_bell,
    z_series_pf,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

COMMANDS = ("sequence", "zseries", "normalorder", "graphs", "verify", "closedform")
FORMATS = ("plain", "json", "csv")
SEQUENCES = (
    "bell",
    "involution",
    "idempotent",
    "idempotent-pair",
    "restricted-bell",
    "hermite-kdf:M",
    "modified-hermite",
)

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    order: int = 8
    format: str = "plain"
    L_spec: str | None = None
    V_spec: str | None = None
    word: str | None = None
    z: tuple[Fraction, Fraction] = (Fraction(1), Fraction(1))
    closed_form: str | None = None
    name: str | None = None
    kernel: bool = False


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise UsageError(f"malformed rational {text!r}; expected an integer or p/q")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise UsageError(f"zero denominator in {text!r}") from None


def parse_weight_spec(text: str, order: int) -> WeightSequence:
    """Parse ``PRESET``, ``PRESET:INT`` or ``[r, r, ...]`` into ``order`` weights.

    Explicit lists give ``h_1, h_2, ...``; they are zero-padded (or cut) to
    ``order``.
    """
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise UsageError(f"unterminated list {text!r}")
        body = text[1:-1].strip()
        if not body:
            raise UsageError("empty weight list")
        values = tuple(parse_rational(t) for t in body.split(","))
        return WeightSequence(values, label=text).padded(order)
    name, sep, param = text.partition(":")
    if name not in bell.PRESETS:
        raise UsageError(f"unknown preset {name!r}; valid presets: {', '.join(preset_names())}")
    if sep and not re.fullmatch(r"\d+", param):
        raise UsageError(f"preset parameter must be a nonnegative integer, got {param!r}")
    try:
        return preset(name, order, int(param) if sep else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_z(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--z expects 'p/q,p/q', got {text!r}")
    return parse_rational(parts[0]), parse_rational(parts[1])


# Rendering.


def _fmt(x) -> str:
    return str(x)


def _render_table(header: Sequence[str], rows: Sequence[Sequence], fmt: str, doc: dict) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, int) else _fmt(v) for v in row])
        return buf.getvalue()
    widths = [max(len(_fmt(v)) for v in col) for col in zip(header, *rows)]
    lines = ["  ".join(_fmt(v).rjust(w) for v, w in zip(row, widths)) for row in [header, *rows]]
    return "\n".join(lines) + "\n"


def _sequence_values(name: str, order: int) -> list[Fraction]:
    base, _, param = name.partition(":")
    if base == "bell":
        return bell.bell_numbers(order)
    if base == "involution":
        return bell.involution_numbers(order)
    if base == "idempotent":
        return bell.idempotent_numbers(order)
    if base == "idempotent-pair":
        return bell.idempotent_pair_sequence(order)
    if base == "restricted-bell":
        return bell.restricted_bell_numbers(order)
    if base == "modified-hermite":
        return [bell.modified_hermite(n, 2) for n in range(order + 1)]
    if base == "hermite-kdf":
        if not re.fullmatch(r"\d+", param) or int(param) < 1:
            raise UsageError("hermite-kdf needs a positive M, e.g. hermite-kdf:2")
        M = int(param)
        return bell.hermite_kdf(M, 1, Fraction(1, factorial(M)), order)
    raise UsageError(f"unknown sequence {name!r}; valid: {', '.join(SEQUENCES)}")


def _cmd_sequence(cfg: RunConfig) -> tuple[int, str]:
    if not cfg.name:
        raise UsageError("sequence needs a name; valid: " + ", ".join(SEQUENCES))
    values = _sequence_values(cfg.name, cfg.order)
    doc = {"sequence": cfg.name, "order": cfg.order, "values": [str(v) for v in values]}
    rows = [(n, v) for n, v in enumerate(values)]
    return EXIT_OK, _render_table(("n", cfg.name), rows, cfg.format, doc)


def _problem(cfg: RunConfig) -> CountingProblem:
    if cfg.L_spec is None or cfg.V_spec is None:
        raise UsageError("both --L and --V are required")
    L = parse_weight_spec(cfg.L_spec, cfg.order)
    V = parse_weight_spec(cfg.V_spec, cfg.order)
    return CountingProblem(L, V, cfg.order)


def _cmd_zseries(cfg: RunConfig) -> tuple[int, str]:
    p = _problem(cfg)
    by_bell, by_pf = z_series_bell(p), z_series_pf(p)
    agree = by_bell == by_pf
    doc = {
        "L": [str(x) for x in p.L.weights],
        "V": [str(x) for x in p.V.weights],
        "order": p.order,
        "bell": by_bell.to_dict(),
        "pf": by_pf.to_dict(),
        "agree": agree,
    }
    rows = [(n, a, b) for n, (a, b) in enumerate(zip(by_bell, by_pf))]
    out = _render_table(("n", "A_n (bell)", "A_n (pf)"), rows, cfg.format, doc)
    if not agree:
        return EXIT_MISMATCH, out
    return EXIT_OK, out


def _cmd_normalorder(cfg: RunConfig) -> tuple[int, str]:
    if not cfg.word:
        raise UsageError("normalorder needs --word")
    try:
        w = WordSpec.parse(cfg.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not cfg.kernel:
        P = normal_order_word(w)
        if cfg.format == "plain":
            return EXIT_OK, f"{P}\n"
        rows = [(p, q, c) for (p, q), c in P.items()]
        return EXIT_OK, _render_table(("p", "q", "c"), rows, cfg.format, P.to_list())
    if cfg.order < 1:
        raise UsageError("--kernel needs --order >= 1")
    kernel = normal_order_exp(w, cfg.order)
    values = kernel.v_values(*cfg.z)
    doc = {"word": str(w), "z": [str(x) for x in cfg.z], **kernel.to_dict()}
    doc["V"] = [str(x) for x in values.weights]
    rows = [(n, str(kernel.g[n]), str(kernel.v[n]), values[n]) for n in range(1, cfg.order + 1)]
    return EXIT_OK, _render_table(("n", "g_n", "v_n", "V_n(z)"), rows, cfg.format, doc)


def _cmd_graphs(cfg: RunConfig) -> tuple[int, str]:
    if cfg.order > MAX_GRAPH_LINES:
        raise UsageError(f"graphs enumerates at most {MAX_GRAPH_LINES} lines; got --order {cfg.order}")
    p = _problem(cfg)
    table = graph_oracle(p, cfg.order)
    expected = z_series_bell(p)[cfg.order]
    doc = table.to_dict()
    rows = [
        (
            " ".join(map(str, c.white)),
            " ".join(map(str, c.black)),
            " ".join(f"{i}-{j}x{k}" for i, j, k in c.edges),
            c.multiplicity,
            c.weight,
        )
        for c in table.classes
    ]
    out = _render_table(("white", "black", "edges", "multiplicity", "weight"), rows, cfg.format, doc)
    if cfg.format == "plain":
        out += f"total {table.total} ({len(table.classes)} classes)\n"
    return (EXIT_OK if table.total == expected else EXIT_MISMATCH), out


def _cmd_closedform(cfg: RunConfig) -> tuple[int, str]:
    if cfg.closed_form not in ("Z1", "Z2", "Z3"):
        raise UsageError("closedform needs --closed-form Z1, Z2 or Z3")
    series = closed_form_series(cfg.closed_form, cfg.order)
    doc = {"closed_form": cfg.closed_form, **series.to_dict()}
    rows = [(n, c) for n, c in enumerate(series)]
    return EXIT_OK, _render_table(("n", "A_n"), rows, cfg.format, doc)


def _cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    from .verify import run_all

    results = run_all(cfg.order)
    failed = [r for r in results if not r.passed]
    doc = {
        "order": cfg.order,
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "checks": [
            {"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
    }
    rows = [(r.suite, r.name, "PASS" if r.passed else "FAIL") for r in results]
    out = _render_table(("suite", "check", "result"), rows, cfg.format, doc)
    if cfg.format == "plain":
        for r in failed:
            out += f"FAIL {r.suite} / {r.name}: {r.detail}\n"
        out += f"{len(results) - len(failed)}/{len(results)} checks passed\n"
    return (EXIT_MISMATCH if failed else EXIT_OK), out


_HANDLERS = {
    "sequence": _cmd_sequence,
    "zseries": _cmd_zseries,
    "normalorder": _cmd_normalorder,
    "graphs": _cmd_graphs,
    "verify": _cmd_verify,
    "closedform": _cmd_closedform,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a command; returns ``(exit status, emitted document)``."""
    if cfg.order < 0:
        raise UsageError("--order must be nonnegative")
    if cfg.format not in FORMATS:
        raise UsageError(f"unknown format {cfg.format!r}")
    return _HANDLERS[cfg.command](cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bosonzqft",
        description="Boson normal ordering and zero-dimensional graph counting, in exact arithmetic.",
    )
    parser.add_argument("--preset-list", action="store_true", help="list weight presets and exit")
    sub = parser.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--order", type=int, default=8, help="truncation order (default 8)")
    common.add_argument("--format", choices=FORMATS, default="plain")

    weights = argparse.ArgumentParser(add_help=False)
    weights.add_argument("--L", dest="L_spec", help="origin multipliers: preset, preset:INT or [r,...]")
    weights.add_argument("--V", dest="V_spec", help="vertex strengths: preset, preset:INT or [r,...]")

    p = sub.add_parser("sequence", parents=[common], help="named integer sequences")
    p.add_argument("name", nargs="?", help=", ".join(SEQUENCES))
    sub.add_parser("zseries", parents=[common, weights], help="A_0..A_N by two routes")
    p = sub.add_parser("normalorder", parents=[common], help="normal form of a boson word")
    p.add_argument("--word", required=True, help="e.g. 'ad ad a' or 'a+ad'")
    p.add_argument("--kernel", action="store_true", help="emit the exp(x w) kernel and V_n up to --order")
    p.add_argument("--z", default="1,1", help="coherent-state point 'z,zbar' for V_n (default 1,1)")
    sub.add_parser("graphs", parents=[common, weights], help="graph classes with --order lines")
    sub.add_parser("verify", parents=[common], help="run every cross-check")
    p = sub.add_parser("closedform", parents=[common], help="expand Z1, Z2 or Z3")
    p.add_argument("--closed-form", choices=("Z1", "Z2", "Z3"), required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.preset_list:
        sys.stdout.write("\n".join(preset_names()) + "\n")
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = RunConfig(
            command=args.command,
            order=args.order,
            format=args.format,
            L_spec=getattr(args, "L_spec", None),
            V_spec=getattr(args, "V_spec", None),
            word=getattr(args, "word", None),
            z=parse_z(getattr(args, "z", "1,1")),
            closed_form=getattr(args, "closed_form", None),
            name=getattr(args, "name", None),
            kernel=getattr(args, "kernel", False),
        )
        status, out = run(cfg)
    except UsageError as exc:
        sys.stderr.write(f"bosonzqft: error: {exc}\n")
        return EXIT_USAGE
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
