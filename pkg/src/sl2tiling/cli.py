"""Command-line front end.

Exit codes: 0 success / property holds, 1 property fails or violations found,
2 usage or format error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from .descent import default_step_bound, nonexistence_scan, uniqueness_scan
from .engine import (
    build_tiling,
    check_constant_slices,
    verify_diagonal_relation,
    verify_window,
)
from .errors import (
    CompletionError,
    DocumentError,
    ScanInconclusive,
    TilingError,
    WrongSignature,
)
from .fibonacci import staircase_plane
from .frontier import Frontier, complete_frontier
from .lattice import SignatureMatrix, Window, dumps_tiling, read_tiling
from .signatures import (
    admissibility_witness,
    enumerate_admissible,
    orbit_of_anti,
    signature_to_signs,
    signs_to_signature,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SCOPE_NOTE = "# scope: slice reduction of n >= 3 tilings; desk-scale computation, not a proof"

# argparse reads "-3..3" or "-,+,-" as unknown options; a leading space keeps them positional
_VALUE_LIKE = re.compile(r"-?\d+\.\.-?\d+|[+-]1?(,[+-]1?)*")


class UsageError(Exception):
    pass


def _protect(argv: Sequence[str]) -> list[str]:
    return [" " + a if a.startswith("-") and _VALUE_LIKE.fullmatch(a) else a for a in argv]


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\.\.(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text.strip()!r}")
    return int(m[1]), int(m[2])


def parse_signs(text: str) -> list[int]:
    text = text.strip()
    tokens = text.split(",") if "," in text else list(text)
    out = []
    for tok in tokens:
        tok = tok.strip()
        if tok in ("+", "+1", "1"):
            out.append(1)
        elif tok in ("-", "-1"):
            out.append(-1)
        else:
            raise argparse.ArgumentTypeError(f"bad sign {tok!r} in {text!r}; use + or -")
    return out


def _grid_lines(rows: list[list[str]]) -> list[str]:
    width = max((len(v) for row in rows for v in row), default=1)
    return [" ".join(v.rjust(width) for v in row) for row in rows]


def _emit(text: str = "") -> None:
    sys.stdout.write(text + "\n")


# -- commands -------------------------------------------------------------------


def cmd_classify(args) -> int:
    n = args.n
    if not 2 <= n <= 16:
        raise UsageError(f"n must be in 2..16, got {n}")
    mats = enumerate_admissible(n)
    expected = 2 ** (n - 1)
    cross = None
    if n <= 7:
        cross = set(orbit_of_anti(n)) == set(mats)
    ok = len(mats) == expected and cross is not False
    if args.json:
        payload = {
            "n": n,
            "count": len(mats),
            "expected": expected,
            "orbit_cross_check": cross,
            "matrices": [
                {"epsilon": [list(r) for r in eps.rows], "signs": list(signature_to_signs(eps)[0].s)} for eps in mats
            ],
        }
        _emit(json.dumps(payload, separators=(",", ":")))
    else:
        if n == 2:
            _emit("# n = 2: the triple condition is vacuous; both signatures carry plane tilings")
        if not args.quiet:
            for idx, eps in enumerate(mats, 1):
                _emit(f"[{idx}] s = {signature_to_signs(eps)[0]}")
                _emit(str(eps))
        _emit(f"{len(mats)} = 2^{n - 1}")
        status = "skipped (n > 7)" if cross is None else ("PASS" if cross else "FAIL")
        _emit(f"orbit cross-check: {status}")
    return EXIT_OK if ok else EXIT_FAIL


def _signature_from_args(args) -> SignatureMatrix:
    n = args.n
    chosen = [x for x in (args.anti, args.sl2, args.eps is not None, args.signs is not None) if x]
    if len(chosen) > 1:
        raise UsageError("give at most one of --anti, --sl2, --eps, --signs")
    if args.eps is not None:
        return SignatureMatrix.from_upper(n, args.eps)
    if args.signs is not None:
        if len(args.signs) != n:
            raise UsageError(f"--signs needs {n} entries")
        return signs_to_signature(args.signs)
    if args.sl2:
        return SignatureMatrix.sl2(n)
    return SignatureMatrix.anti(n)


def _window_from_args(n: int, ranges: list[tuple[int, int]] | None) -> Window:
    ranges = ranges or [(-3, 3)]
    if len(ranges) == 1:
        ranges = ranges * n
    if len(ranges) != n:
        raise UsageError(f"--window needs 1 or {n} ranges, got {len(ranges)}")
    return Window(tuple(a for a, _ in ranges), tuple(b for _, b in ranges))


def cmd_build(args) -> int:
    n = args.n
    if n < 3:
        raise UsageError("build needs n >= 3 (use `staircase` for the plane)")
    eps = _signature_from_args(args)
    window = _window_from_args(n, args.window)
    witness = admissibility_witness(eps)
    if witness is not None:
        j, k, l = witness
        msg = (
            f"no eps-SL2-tiling of Z^{n} exists: triple {witness} has "
            f"eps{j}{k}*eps{j}{l}*eps{k}{l} = +1"
        )
        if args.json:
            _emit(json.dumps({"ok": False, "error": "NotAdmissible", "witness": list(witness)}, separators=(",", ":")))
        else:
            _emit(msg)
        return EXIT_FAIL
    t = build_tiling(eps, window, args.translation)
    report = verify_window(t)
    doc = dumps_tiling(t)
    summary = {
        "ok": report.ok,
        "n": n,
        "cells": window.size,
        "translation": args.translation,
        "signs": list(signature_to_signs(eps)[0].s),
        "violations": len(report),
    }
    if args.output:
        Path(args.output).write_text(doc, encoding="utf-8")
        summary["output"] = str(args.output)
        if args.json:
            _emit(json.dumps(summary, separators=(",", ":")))
        else:
            _emit(f"wrote {args.output}: n={n}, {window.size} cells, translation {args.translation}, {len(report)} violations")
    else:
        sys.stdout.write(doc)
        if not args.quiet:
            sys.stderr.write(f"verified: {len(report)} violations\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        t = read_tiling(args.path)
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror or exc}") from exc
    except DocumentError as exc:
        raise UsageError(f"malformed tiling document {args.path}: {exc}") from exc
    report = verify_window(t)
    results = {"relation": report}
    if args.diagonal:
        results["diagonal"] = verify_diagonal_relation(t)
    slices = None
    if args.slices:
        try:
            slices = check_constant_slices(t)
        except WrongSignature as exc:
            raise UsageError(f"--slices: {exc}") from exc
    ok = all(r.ok for r in results.values()) and slices is not False
    if args.json:
        payload = {"ok": ok}
        for name, rep in results.items():
            payload[name] = [json.loads(v.to_json()) for v in rep]
        if args.slices:
            payload["constant_slices"] = slices
        _emit(json.dumps(payload, separators=(",", ":")))
    else:
        for name, rep in results.items():
            _emit(f"{name}: {'OK' if rep.ok else 'FAIL'} ({len(rep)} violations)")
            if not args.quiet:
                for v in rep:
                    _emit(f"  {v}")
        if args.slices:
            _emit(f"constant slices: {'OK' if slices else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_staircase(args) -> int:
    if args.rows < 1 or args.cols < 1:
        raise UsageError("rows and cols must be positive")
    top, left = args.top, args.left
    t = staircase_plane(Window((top - args.rows + 1, left), (top, left + args.cols - 1)))
    rows = [[str(t[i, j]) for j in range(left, left + args.cols)] for i in range(top, top - args.rows, -1)]
    if args.json:
        _emit(json.dumps({"top": top, "left": left, "rows": rows}, separators=(",", ":")))
    else:
        for line in _grid_lines(rows):
            _emit(line)
    return EXIT_OK


def cmd_frontier(args) -> int:
    try:
        f = Frontier.parse(args.frontier)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.sign not in (-1, 1):
        raise UsageError("--sign must be -1 or +1")
    try:
        c = complete_frontier(f, args.depth, args.sign)
    except CompletionError as exc:
        if args.json:
            _emit(json.dumps({"ok": False, "error": type(exc).__name__, "cell": list(exc.cell), "message": str(exc)},
                             separators=(",", ":")))
        else:
            _emit(f"FAIL: {type(exc).__name__} at cell {exc.cell}: {exc}")
        return EXIT_FAIL
    w = c.window
    (i0, j0), (i1, j1) = w.lo, w.hi
    rows = [[str(c.cells[i, j]) if (i, j) in c.cells else "." for j in range(j0, j1 + 1)] for i in range(i1, i0 - 1, -1)]
    report = c.verify()
    if args.json:
        _emit(json.dumps(
            {"ok": report.ok, "frontier": str(f), "sign": args.sign, "depth": args.depth, "top": i1, "left": j0,
             "determined": len(c.cells), "cells": w.size, "rows": rows},
            separators=(",", ":"),
        ))
    else:
        for line in _grid_lines(rows):
            _emit(line)
        _emit(f"{len(c.cells)}/{w.size} cells determined within depth {args.depth}; {len(report)} violations")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_scan(args) -> int:
    bound = args.B
    if bound < 1:
        raise UsageError("--B must be >= 1")
    if args.mode == "nonexistence":
        steps = args.K if args.K is not None else default_step_bound(bound)
        seeds = bound * bound
        try:
            certs = nonexistence_scan(bound, steps, sign=1, workers=args.workers)
        except ScanInconclusive as exc:
            if args.json:
                _emit(json.dumps({"mode": args.mode, "pass": False, "survivors": [list(s) for s in exc.survivors]},
                                 separators=(",", ":")))
            else:
                _emit(f"FAIL: {len(exc.survivors)} seed(s) survive {steps} steps both ways: {exc.survivors[:10]}")
            return EXIT_FAIL
        if args.json:
            _emit(json.dumps(
                {"mode": args.mode, "B": bound, "K": steps, "pass": True, "certified": len(certs), "seeds": seeds,
                 "certificates": [json.loads(c.to_json()) for c in certs]},
                separators=(",", ":"),
            ))
        else:
            _emit(f"PASS: {len(certs)}/{seeds} seeds certified")
            _emit(SCOPE_NOTE)
            if not args.quiet:
                for cert in certs:
                    _emit(cert.to_json())
        return EXIT_OK
    steps = args.K if args.K is not None else 12
    res = uniqueness_scan(bound, steps, sign=-1, workers=args.workers)
    if args.json:
        _emit(json.dumps(
            {"mode": args.mode, "B": bound, "K": steps, "pass": res.matches,
             "survivors": [list(s) for s in res.survivors], "expected": [list(s) for s in res.expected],
             "certificates": [json.loads(c.to_json()) for c in res.certificates]},
            separators=(",", ":"),
        ))
    else:
        verdict = "PASS" if res.matches else "FAIL"
        _emit(f"{verdict}: {len(res.survivors)} survivors, {len(res.expected)} staircase-adjacent pairs in [1,{bound}]^2")
        _emit(SCOPE_NOTE)
        _emit("survivors: " + " ".join(f"({a},{b})" for a, b in res.survivors))
        if not args.quiet:
            for cert in res.certificates:
                _emit(cert.to_json())
    return EXIT_OK if res.matches else EXIT_FAIL


# -- parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable JSON output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="summaries only")

    p = _Parser(prog="sl2tiling", description="Exact eps-SL2-tilings of Z^n on finite windows.")
    p.add_argument("--json", action="store_true", help="machine-readable JSON output")
    p.add_argument("--quiet", action="store_true", help="summaries only")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="list admissible signature matrices")
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_classify)

    b = sub.add_parser("build", parents=[common], help="construct and verify a tiling on a window")
    b.add_argument("n", type=int)
    b.add_argument("--anti", action="store_true", help="all off-diagonal -1 (default)")
    b.add_argument("--sl2", action="store_true", help="all off-diagonal +1 (never admissible for n >= 3)")
    b.add_argument("--eps", type=parse_signs, help="strict upper triangle, row-major, e.g. +,+,-")
    b.add_argument("--signs", type=parse_signs, help="sign vector s with eps_kl = -s_k s_l")
    b.add_argument("--window", type=parse_range, nargs="+", metavar="LO..HI",
                   help="one range for every axis or one per axis (default -3..3)")
    b.add_argument("--translation", type=int, default=0)
    b.add_argument("-o", "--output", help="write the tiling document here instead of stdout")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="check a tiling document")
    v.add_argument("path")
    v.add_argument("--diagonal", action="store_true", help="also check the k = l relation")
    v.add_argument("--slices", action="store_true", help="also check constant coordinate-sum slices")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("staircase", parents=[common], help="print a block of the staircase anti-tiling")
    s.add_argument("rows", type=int)
    s.add_argument("cols", type=int)
    s.add_argument("--top", type=int, default=0, help="row index i of the first printed row")
    s.add_argument("--left", type=int, default=0, help="column index j of the first printed column")
    s.set_defaults(func=cmd_staircase)

    f = sub.add_parser("frontier", parents=[common], help="complete a frontier of 1's, e.g. '@(0,0) RDRD'")
    f.add_argument("frontier")
    f.add_argument("--depth", type=int, default=12)
    f.add_argument("--sign", type=int, default=-1, help="-1 (anti) or +1 (SL2)")
    f.set_defaults(func=cmd_frontier)

    sc = sub.add_parser("scan", parents=[common], help="descent certificates over seeds [1,B]^2",
                        description="nonexistence: SL2 slice recurrence, default K = B + 2 (the minimum drops by "
                                    "at least one per step). uniqueness: anti recurrence, default K = 12.")
    sc.add_argument("mode", choices=["nonexistence", "uniqueness"])
    sc.add_argument("--B", type=int, default=200, help="seed bound")
    sc.add_argument("--K", type=int, default=None, help="step bound")
    sc.add_argument("--workers", type=int, default=None, help="worker processes (default: $TILING_THREADS or 1)")
    sc.set_defaults(func=cmd_scan)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_protect(argv))
    try:
        return args.func(args)
    except (UsageError, TilingError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
