"""Command line interface.

Subcommands: sort, table, preimages, fertility, orbit, periodic, image,
verify, clump, inverse.  Exit codes: 0 success (verify: all checks pass),
1 failed verification, 2 unparseable word/pattern text, 3 invalid pattern
set (empty, length-1 pattern, non-permutation, or one unusable for the
requested operation), 4 size cap exceeded.

The hard sweep cap is 12; the PERMSTACK_MAX_N environment variable can
lower it (values above 12 are clamped).  All output is deterministic and
independent of --parallel.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import dynamics as dyn
from . import verify
from .machine import clumping, sort, sort_with_trace
from .textio import ParseError, format_word, parse_patterns, parse_word
from .words import MAX_ENUM_N, PatternSet, Word

EXIT_PARSE = 2
EXIT_PATTERNS = 3
EXIT_CAP = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def hard_cap() -> int:
    raw = os.environ.get("PERMSTACK_MAX_N")
    if raw is None:
        return MAX_ENUM_N
    try:
        return min(MAX_ENUM_N, int(raw))
    except ValueError:
        raise CliError(EXIT_PARSE, f"PERMSTACK_MAX_N={raw!r} is not an integer")


def _patterns(args) -> PatternSet:
    try:
        return parse_patterns(args.patterns)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"bad --patterns: {exc}")
    except ValueError as exc:
        raise CliError(EXIT_PATTERNS, f"invalid pattern set: {exc}")


def _word(args) -> Word:
    try:
        return parse_word(args.perm)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"bad --perm: {exc}")


def _check_cap(n: int) -> None:
    cap = hard_cap()
    if n > cap:
        raise CliError(EXIT_CAP, f"n={n} exceeds the cap of {cap}")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def cmd_sort(args) -> int:
    tset = _patterns(args)
    w = _word(args)
    if args.trace:
        out, steps, events = sort_with_trace(w, tset)
        _emit(args, {"input": list(w), "output": list(out), "steps": steps}, format_word(out))
        for ev in events:
            print(json.dumps(ev.as_dict()))
    else:
        out = sort(w, tset)
        _emit(args, {"input": list(w), "output": list(out)}, format_word(out))
    return 0


def cmd_inverse(args) -> int:
    tset = _patterns(args)
    w = _word(args)
    try:
        out = dyn.inverse_sort(w, tset)
    except ValueError as exc:
        raise CliError(EXIT_PATTERNS, str(exc))
    _emit(args, {"input": list(w), "output": list(out)}, format_word(out))
    return 0


def cmd_clump(args) -> int:
    tset = _patterns(args)
    w = _word(args)
    c = clumping(w, tset)
    if c is None:
        _emit(args, {"clumping": None}, "none")
        return 0
    text = "\n".join(
        [
            "segments: " + " ".join(format_word(s) for s in c.segments),
            "witness_pattern: " + format_word(c.witness_pattern),
            "witness_indices: " + ",".join(str(i) for i in c.witness_indices),
        ]
    )
    _emit(args, {"clumping": c.as_dict()}, text)
    return 0


def cmd_preimages(args) -> int:
    tset = _patterns(args)
    gamma = _word(args)
    _check_cap(len(gamma))
    try:
        pre = sorted(dyn.preimages(gamma, tset))
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    payload = {
        "target": list(gamma),
        "count": len(pre),
        "preimages": [list(p) for p in pre],
    }
    text = "\n".join([f"count: {len(pre)}"] + [format_word(p) for p in pre])
    _emit(args, payload, text)
    return 0


def cmd_fertility(args) -> int:
    tset = _patterns(args)
    _check_cap(args.n)
    try:
        rep = dyn.fertility_max(tset, args.n, args.parallel)
    except ValueError as exc:
        raise CliError(EXIT_PATTERNS, str(exc))
    text = "\n".join(
        [
            f"n: {rep.n}",
            f"max_count: {rep.max_count}",
            f"bound: {rep.bound}",
            "witnesses: " + " ".join(format_word(w) for w in sorted(rep.witnesses)),
        ]
    )
    _emit(args, rep.as_dict(), text)
    return 0


def cmd_orbit(args) -> int:
    tset = _patterns(args)
    w = _word(args)
    _check_cap(len(w))
    try:
        rep = dyn.orbit(w, tset)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    text = "\n".join(
        [
            "start: " + format_word(rep.start),
            "tail: " + (" ".join(format_word(q) for q in rep.tail) or "(none)"),
            "cycle: " + " ".join(format_word(q) for q in rep.cycle),
            f"cycle_length: {rep.cycle_length}",
        ]
    )
    _emit(args, rep.as_dict(), text)
    return 0


def cmd_periodic(args) -> int:
    tset = _patterns(args)
    _check_cap(args.n)
    cycles = dyn.orbit_partition(tset, args.n, args.parallel)
    count = sum(len(c) for c in cycles)
    payload = {
        "n": args.n,
        "periodic_count": count,
        "cycles": [[list(p) for p in c] for c in cycles],
    }
    lines = [f"periodic_count: {count}"]
    lines += ["cycle: " + " ".join(format_word(p) for p in c) for c in cycles]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_image(args) -> int:
    tset = _patterns(args)
    _check_cap(args.n)
    size = dyn.image_size(tset, args.n, args.parallel)
    _emit(args, {"n": args.n, "image_size": size}, str(size))
    return 0


def cmd_table(args) -> int:
    _check_cap(args.max_n)
    table = dyn.build_sort_table(args.max_n, args.parallel)
    if args.format == "json":
        print(json.dumps(table.as_dict()))
        return 0
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["sigma", "tau"] + [f"n{i}" for i in range(1, args.max_n + 1)] + ["catalan", "note"]
        )
        for row in table.rows:
            writer.writerow(
                [format_word(row.sigma), format_word(row.tau)]
                + list(row.counts)
                + [str(row.is_catalan).lower(), row.note]
            )
        sys.stdout.write(buf.getvalue())
        return 0
    for row in table.rows:
        counts = " ".join(f"{c:>6}" for c in row.counts)
        mark = f"catalan={str(row.is_catalan).lower()}"
        print(f"({format_word(row.sigma)},{format_word(row.tau)})  {counts}  {mark:<14} {row.note}")
    return 0


def cmd_verify(args) -> int:
    _check_cap(args.max_n)
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    checks = verify.run_suites(names, args.max_n, args.parallel)
    failed = [c for c in checks if not c.ok]
    for c in checks:
        status = "PASS" if c.ok else "FAIL"
        detail = f": {c.detail}" if c.detail else ""
        print(f"{status}  {c.name}{detail}")
    print(f"summary: {len(checks) - len(failed)}/{len(checks)} checks passed")
    return 0 if not failed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permstack",
        description="Sort permutations through a pattern-avoiding stack and "
        "analyze the resulting map: preimages, fertility bounds, orbits, and "
        "exhaustive verification sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str, *, patterns=False, perm=False, n=False, max_n=False):
        p = sub.add_parser(name, help=help_)
        if patterns:
            p.add_argument("--patterns", required=True, help='forbidden patterns, e.g. "123,132"')
        if perm:
            p.add_argument("--perm", required=True, help='input word, e.g. "52413" or "5,2,4,1,3"')
        if n:
            p.add_argument("--n", type=int, required=True, help="length swept exhaustively")
        if max_n:
            p.add_argument("--max-n", type=int, default=7, help="largest length swept (default 7)")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--parallel", type=int, default=1, help="worker processes for sweeps")
        p.set_defaults(func=func)
        return p

    p = add("sort", cmd_sort, "run the machine on one word", patterns=True, perm=True)
    p.add_argument("--trace", action="store_true", help="also print one JSON line per step")
    add("inverse", cmd_inverse, "apply the inverse map (bijective sets only)", patterns=True, perm=True)
    add("clump", cmd_clump, "show the clumping decomposition", patterns=True, perm=True)
    add("preimages", cmd_preimages, "list everything sorting to the given word", patterns=True, perm=True)
    add("fertility", cmd_fertility, "largest preimage count on S_n", patterns=True, n=True)
    add("orbit", cmd_orbit, "iterate the map until it cycles", patterns=True, perm=True)
    add("periodic", cmd_periodic, "periodic points of S_n grouped into cycles", patterns=True, n=True)
    add("image", cmd_image, "number of distinct outputs on S_n", patterns=True, n=True)
    add("table", cmd_table, "identity-preimage counts for all pairs of length-3 patterns", max_n=True)
    p = add("verify", cmd_verify, "run exhaustive verification suites", max_n=True)
    p.add_argument(
        "--suite",
        choices=tuple(verify.SUITES) + ("all",),
        default="all",
        help="which suite to run (default all)",
    )
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "table":
        print("csv output is only available for `table`", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
