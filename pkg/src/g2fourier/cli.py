"""Command-line front end.

    g2fourier sp6 --t0 1,1,1,1,1,1 --k1 0 --k2 7 --r 1,0,0,0,0,0
    g2fourier g2 --frame E --cubic 1,1,-2,0 --m 5 --word 0:1,9:t
    g2fourier shells --n 2 --trace 1
    g2fourier table6
    g2fourier selftest

Exit codes: 0 success, 1 bad input or precondition, 2 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from types import SimpleNamespace
from typing import Sequence

from . import defaults
from .enumeration import BinaryCubic, ShellCache, oct_shell
from .jordan import SymMatrix3
from .lie_ops import make_null_pair, make_singular_pair, to_E_frame
from .scalars import GaussRational, format_scalar, parse_scalar
from .theta import (
    TABLE6_CUBICS, TABLE6_VALUES, CoeffTable, g2_coefficients, g2_fourier, normalize_table,
    sp6_fourier,
)

EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2


class VerificationFailure(Exception):
    pass


@dataclass
class Config:
    cache_path: str | None = None
    parallelism: int = 1
    output_format: str = "text"

    def __post_init__(self):
        if self.parallelism < 1:
            raise ValueError("--jobs must be at least 1")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")


@dataclass
class JobSpec:
    command: str
    params: dict = field(default_factory=dict)


# --- argument parsing -------------------------------------------------------

def parse_ints(text: str, n: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"{what}: expected {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise ValueError(f"{what}: expected {n} integers, got {len(vals)}")
    return vals


def parse_scalars(text: str, n: int, what: str) -> tuple[GaussRational, ...]:
    vals = tuple(parse_scalar(x) for x in text.split(","))
    if len(vals) != n:
        raise ValueError(f"{what}: expected {n} scalars, got {len(vals)}")
    return vals


def parse_word(text: str | None) -> tuple[tuple[int, GaussRational], ...]:
    if not text:
        return ()
    word = []
    for item in text.split(","):
        idx, sep, coeff = item.partition(":")
        if not sep:
            raise ValueError(f"word entry {item!r} is not of the form index:coefficient")
        word.append((int(idx), parse_scalar(coeff)))
    return tuple(word)


def format_word(word) -> str:
    return ",".join(f"{i}:{format_scalar(c)}" for i, c in word)


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags with suppressed defaults, so a flag given
    # before the subcommand is not reset by the subparser
    def d(value):
        return value if defaults else argparse.SUPPRESS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "text"),
                        default=d("text"))
    common.add_argument("--cache", dest="cache_path", default=d(None), help="shell cache file (JSON)")
    common.add_argument("--jobs", type=int, default=d(1))
    return common


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="g2fourier", parents=[_common_flags(True)],
                                description="Fourier coefficients of exceptional theta lifts.")
    sub = p.add_subparsers(dest="command", required=True)
    common = _common_flags(False)

    s = sub.add_parser("sp6", parents=[common], help="Sp6 coefficient polynomial at T0")
    s.add_argument("--t0", required=True, help="c1,c2,c3,t1,t2,t3 (off-diagonal entries t_i/2)")
    s.add_argument("--k1", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.add_argument("--r", default=None, help="six scalars r1..r6 for the null pair")

    g = sub.add_parser("g2", parents=[common], help="G2 coefficient at a monic cubic")
    g.add_argument("--frame", choices=("I", "E"), required=True)
    g.add_argument("--cubic", required=True, help="a,b,c,d with a = 1")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--word", default=None, help="generator word idx:coeff,...")

    h = sub.add_parser("shells", parents=[common], help="octonion norm shell in R")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--trace", type=int, default=None)
    h.add_argument("--list", action="store_true", help="print the elements too")

    t = sub.add_parser("table6", parents=[common], help="reproduce the weight-6 table")
    t.add_argument("--frames", default="I,E")
    t.add_argument("--expected", default=None, help="override the 12 expected values")

    sub.add_parser("selftest", parents=[common], help="run the invariant suites")
    return p


# --- commands ---------------------------------------------------------------

def run_sp6(T0: Sequence[int], k1: int, k2: int, r=None):
    T0 = SymMatrix3(*T0)
    r = defaults.DEFAULT_R if r is None else r
    pair = make_null_pair(r)
    return sp6_fourier(T0, k1, k2, pair)


def run_g2(frame: str, cubic: Sequence[int], m: int, word=()) -> GaussRational:
    f = BinaryCubic(*cubic)
    f.require_monic()
    if m < 1:
        raise ValueError("m must be >= 1")
    P = make_singular_pair(word)
    if frame == "E":
        P = to_E_frame(P)
    return g2_fourier(frame, f, m, P)


def _table_frame(frame: str, words) -> list[list[GaussRational]]:
    pairs = [make_singular_pair(w) for w in words]
    if frame == "E":
        pairs = [to_E_frame(P) for P in pairs]
    res = g2_coefficients(frame, TABLE6_CUBICS, [2], pairs)
    return [[res[(f, 2, j)] for f in TABLE6_CUBICS] for j in range(len(pairs))]


@dataclass
class TableReport:
    frame: str
    word: tuple
    raw: list
    normalized: list | None
    row_ok: list[bool]

    @property
    def passed(self) -> bool:
        return self.normalized is not None and all(self.row_ok)


def evaluate_table(frame: str, word, raw: Sequence, expected=TABLE6_VALUES) -> TableReport:
    """Normalize one raw 12-entry column and compare it to ``expected``."""
    raw = list(raw)
    if not any(raw):
        return TableReport(frame, word, raw, None, [False] * len(expected))
    norm = normalize_table(CoeffTable(list(zip(TABLE6_CUBICS, raw)), 6, frame)).values()
    # one global sign is allowed
    if norm[0] == -expected[0]:
        norm = [-v for v in norm]
    return TableReport(frame, word, raw, norm, [v == e for v, e in zip(norm, expected)])


def run_table6(frames=("I", "E"), words=defaults.PAIR_WORDS, expected=TABLE6_VALUES,
               jobs: int = 1) -> tuple[list[TableReport], float]:
    """Theta with m = 2 over the weight-6 cubics, for each frame and word."""
    start = time.perf_counter()
    if jobs > 1 and len(frames) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(frames))) as ex:
            results = list(ex.map(_table_frame, frames, [words] * len(frames)))
    else:
        results = [_table_frame(fr, words) for fr in frames]
    reports = [evaluate_table(fr, w, raw, expected)
               for fr, per_word in zip(frames, results) for w, raw in zip(words, per_word)]
    return reports, time.perf_counter() - start


def run_selftest(quick: bool = False):
    from .selftest import run_all
    return run_all(quick=quick)


# --- output -----------------------------------------------------------------

def _emit(cfg: Config, doc: dict, text: str, rows: list[list] | None, out) -> None:
    if cfg.output_format == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows or [])
        out.write(buf.getvalue())
    else:
        out.write(text.rstrip("\n") + "\n")


def _dispatch(job: JobSpec, cfg: Config, out) -> int:
    cmd = job.command
    args = SimpleNamespace(**job.params)
    if cmd == "sp6":
        t0 = parse_ints(args.t0, 6, "--t0")
        r = parse_scalars(args.r, 6, "--r") if args.r else None
        poly = run_sp6(t0, args.k1, args.k2, r)
        doc = {"command": "sp6", "t0": list(t0), "k1": args.k1, "k2": args.k2,
               "r": [format_scalar(x) for x in (r or defaults.DEFAULT_R)],
               "polynomial": poly.to_json(), "text": str(poly)}
        rows = [["v1", "v2", "v3", "w1", "w2", "w3", "coefficient"]]
        rows += [list(e) + [format_scalar(c)] for e, c in poly.items()]
        _emit(cfg, doc, str(poly), rows, out)
        return EXIT_OK
    if cmd == "g2":
        cubic = parse_ints(args.cubic, 4, "--cubic")
        word = parse_word(args.word)
        val = run_g2(args.frame, cubic, args.m, word)
        doc = {"command": "g2", "frame": args.frame, "cubic": list(cubic), "m": args.m,
               "word": format_word(word), "value": format_scalar(val)}
        rows = [["frame", "a", "b", "c", "d", "m", "word", "value"],
                [args.frame, *cubic, args.m, format_word(word), format_scalar(val)]]
        _emit(cfg, doc, format_scalar(val), rows, out)
        return EXIT_OK
    if cmd == "shells":
        if args.n < 0:
            raise ValueError("--n must be non-negative")
        sh = oct_shell(args.n, args.trace)
        doc = {"command": "shells", "n": args.n, "trace": args.trace, "count": len(sh)}
        if args.list:
            doc["coords"] = sh.coords.tolist()
        text = f"n={args.n} trace={args.trace if args.trace is not None else '*'} count={len(sh)}"
        if args.list:
            text += "\n" + "\n".join(" ".join(str(x) for x in row) for row in sh.coords.tolist())
        rows = [["n", "trace", "count"], [args.n, "" if args.trace is None else args.trace, len(sh)]]
        if args.list:
            rows = [["c%d" % i for i in range(8)]] + sh.coords.tolist()
        _emit(cfg, doc, text, rows, out)
        return EXIT_OK
    if cmd == "table6":
        frames = tuple(x.strip().upper() for x in args.frames.split(",") if x.strip())
        if not frames or any(f not in ("I", "E") for f in frames):
            raise ValueError("--frames must list I and/or E")
        expected = parse_ints(args.expected, 12, "--expected") if args.expected else TABLE6_VALUES
        reports, secs = run_table6(frames, expected=expected, jobs=cfg.parallelism)
        ok = any(r.passed for r in reports)
        lines, rows, docs = [], [["frame", "word", "cubic", "raw", "normalized", "expected", "ok"]], []
        for rep in reports:
            w = format_word(rep.word) or "-"
            lines.append(f"frame {rep.frame} word {w}: "
                         f"{'PASS' if rep.passed else 'FAIL'} ({sum(rep.row_ok)}/12 rows)")
            for i, f in enumerate(TABLE6_CUBICS):
                nv = format_scalar(rep.normalized[i]) if rep.normalized else "-"
                mark = "ok" if rep.row_ok[i] else "MISMATCH"
                lines.append(f"  ({f}) raw={format_scalar(rep.raw[i])} normalized={nv} "
                             f"expected={expected[i]} {mark}")
                rows.append([rep.frame, w, str(f), format_scalar(rep.raw[i]), nv, expected[i],
                             int(rep.row_ok[i])])
            docs.append({"frame": rep.frame, "word": format_word(rep.word), "passed": rep.passed,
                         "rows": [{"cubic": list(f.as_tuple()), "raw": format_scalar(rep.raw[i]),
                                   "normalized": format_scalar(rep.normalized[i]) if rep.normalized else None,
                                   "expected": expected[i], "ok": rep.row_ok[i]}
                                  for i, f in enumerate(TABLE6_CUBICS)]})
        lines.append(f"runtime {secs:.1f} s; {'PASS' if ok else 'FAIL'}")
        _emit(cfg, {"command": "table6", "runtime_seconds": round(secs, 3), "passed": ok,
                    "runs": docs}, "\n".join(lines), rows, out)
        return EXIT_OK if ok else EXIT_VERIFY
    if cmd == "selftest":
        results = run_selftest()
        ok = all(r.passed for r in results)
        lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
        rows = [["suite", "passed", "detail"]] + [[r.name, int(r.passed), r.detail] for r in results]
        _emit(cfg, {"command": "selftest", "passed": ok,
                    "suites": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                               for r in results]}, "\n".join(lines), rows, out)
        return EXIT_OK if ok else EXIT_VERIFY
    raise ValueError(f"unknown command {cmd!r}")


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PRECONDITION if e.code else EXIT_OK
    try:
        cfg = Config(args.cache_path, args.jobs, args.output_format)
        cache = ShellCache(cfg.cache_path) if cfg.cache_path else None
        if cache:
            cache.load()
        params = {k: v for k, v in vars(args).items()
                  if k not in ("command", "output_format", "cache_path", "jobs")}
        code = _dispatch(JobSpec(args.command, params), cfg, out)
        if cache:
            cache.save()
        return code
    except (ValueError, IndexError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (VerificationFailure, AssertionError) as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
