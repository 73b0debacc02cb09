"""Command-line interface: ``mul``, ``bench`` and ``selftest``."""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from .bitpoly import BitPoly, ParseError
from .pipeline import BACKENDS, SizeError, multiply

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SIZE = 4
EXIT_IO = 5

BENCH_HEADER = ["log2_d_div_64", "backend", "millis", "reps", "machine_note"]


def _err(msg: str) -> None:
    print(f"gf2poly: {msg}", file=sys.stderr)


def read_poly(path: str, fmt: str) -> BitPoly:
    data = Path(path).read_bytes()
    if fmt == "hex":
        return BitPoly.from_hex(data)
    return BitPoly.from_bytes(data)


def format_poly(p: BitPoly, fmt: str) -> bytes:
    if fmt == "hex":
        return (p.to_hex() + "\n").encode("ascii")
    return p.to_bytes()


def cmd_mul(args) -> int:
    polys = []
    for path in (args.in_a, args.in_b):
        try:
            polys.append(read_poly(path, args.format))
        except OSError as exc:
            _err(f"cannot read {path}: {exc.strerror}")
            return EXIT_IO
        except ParseError as exc:
            _err(f"{path}: {exc}")
            return EXIT_PARSE
    try:
        prod = multiply(polys[0], polys[1], args.backend, max_bits=args.max_bits)
    except SizeError as exc:
        _err(str(exc))
        return EXIT_SIZE
    out = format_poly(prod, args.format)
    try:
        Path(args.out).write_bytes(out)
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc.strerror}")
        return EXIT_IO
    return EXIT_OK


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo_i < 0 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return lo_i, hi_i


def parse_backends(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [n for n in names if n not in BACKENDS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown backend(s) {bad}; choose from {', '.join(BACKENDS)}")
    return names


def bench_rows(backends: list[str], lo: int, hi: int, reps: int, seed: int, note: str = "", log=None):
    """Yield (k, backend, median millis, reps, note) for d = 64 * 2^k bits."""
    rng = np.random.default_rng(seed)
    warm = BitPoly.random(256, rng)
    for be in backends:
        multiply(warm, warm, be)  # compile kernels outside the timed region
    for k in range(lo, hi + 1):
        d = 64 << k
        a = BitPoly.random(d, rng)
        b = BitPoly.random(d, rng)
        for be in backends:
            times = []
            for _ in range(reps):
                t0 = time.perf_counter()
                multiply(a, b, be)
                times.append(time.perf_counter() - t0)
            millis = max(statistics.median(times) * 1e3, 1e-3)
            if log:
                log(f"k={k} {be}: {millis:.3f} ms")
            yield k, be, millis, reps, note


def cmd_bench(args) -> int:
    lo, hi = args.log2_words
    if args.reps < 3:
        _err("--reps must be at least 3")
        return EXIT_USAGE
    try:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(BENCH_HEADER)
            log = (lambda s: print(s, file=sys.stderr)) if args.verbose else None
            for k, be, millis, reps, note in bench_rows(args.backends, lo, hi, args.reps, args.seed, args.machine_note, log):
                w.writerow([k, be, f"{millis:.3f}", reps, note])
                fh.flush()
    except OSError as exc:
        _err(f"cannot write {args.csv}: {exc.strerror}")
        return EXIT_IO
    except SizeError as exc:
        _err(str(exc))
        return EXIT_SIZE
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .context import get_context
    from .selftest import run_selftest

    ctx = get_context()
    if args.corrupt_beta is not None:
        ctx = ctx.with_corrupted_beta(args.corrupt_beta)
    results = run_selftest(args.seed, ctx)
    for name, err in results.items():
        print(f"{'PASS' if err is None else 'FAIL'} {name}" + ("" if err is None else f": {err}"))
    return EXIT_OK if all(e is None for e in results.values()) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gf2poly", description="Binary polynomial multiplication via additive FFT.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mul", help="multiply two polynomials read from files")
    m.add_argument("--backend", choices=BACKENDS, default="tower128")
    m.add_argument("--in-a", required=True)
    m.add_argument("--in-b", required=True)
    m.add_argument("--out", required=True)
    m.add_argument("--format", choices=("hex", "bin"), default="hex")
    m.add_argument("--max-bits", type=int, default=None, help="reject operands longer than this many bits")
    m.set_defaults(func=cmd_mul)

    b = sub.add_parser("bench", help="time backends on random inputs of 64 * 2^k bits")
    b.add_argument("--backends", type=parse_backends, default=["tower128"])
    b.add_argument("--log2-words", type=parse_range, default=(15, 17), metavar="LO..HI")
    b.add_argument("--reps", type=int, default=3)
    b.add_argument("--csv", required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--machine-note", default="", help="free text copied into every row")
    b.add_argument("--verbose", action="store_true")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("selftest", help="run the fast invariant suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--corrupt-beta", type=int, default=None, help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
