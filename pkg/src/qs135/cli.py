"""Command-line front end: ``qs135 {solve,verify,exceptions,identities,bench}``.

Exit codes: 0 success, 1 a failure/counterexample was reported, 2 usage or
configuration error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import solver, verifier
from .quaternion import ALPHA, ConfigurationError, InvariantViolation, Quat
from .solution import Solution
from .squares import p4_partition_count
from .transfer import IDENTITIES, format_identities, parse_identities

__all__ = ["main", "run", "CliConfig", "P4_TABLE"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# (ell, expected P4(ell)) rows checked by `identities`
P4_TABLE = tuple((ell, 1) for ell in (1, 3, 5, 7, 11, 15, 23, 2, 8, 32, 6, 24, 96, 14, 56, 224)) + ((35, 2),)


@dataclass
class CliConfig:
    command: str
    m: Optional[int] = None
    lo: Optional[int] = None
    hi: Optional[int] = None
    weights: Quat = ALPHA
    natural: bool = False
    jobs: int = 1
    checkpoint: Optional[Path] = None
    out: Optional[Path] = None
    n: Optional[int] = None

    @property
    def mode(self) -> str:
        return "natural" if self.natural else "integer"


def _weights(text: str) -> Quat:
    try:
        fields = [int(f) for f in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be integers, got {text!r}") from None
    if len(fields) != 4 or min(fields) < 0 or not any(fields):
        raise argparse.ArgumentTypeError("weights must be four nonnegative integers, not all zero")
    return Quat(*fields)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _default_jobs() -> int:
    env = os.environ.get("QS135_JOBS")
    if env is None:
        return 1
    try:
        return _positive(env)
    except (ValueError, argparse.ArgumentTypeError):
        raise ConfigurationError(f"QS135_JOBS must be a positive integer, got {env!r}") from None


def _emit(fh: TextIO, record: dict) -> None:
    fh.write(json.dumps(record, separators=(",", ":")) + "\n")
    fh.flush()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qs135", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a representation of m")
    p.add_argument("m", type=_positive)
    p.add_argument("--natural", action="store_true", help="require x, y, z, t >= 0")
    p.add_argument("--weights", type=_weights, default=ALPHA, metavar="a,b,c,d")
    p.add_argument("--n", type=int, default=None, help="force this n (no congruence filtering)")

    p = sub.add_parser("verify", help="check every m in [FROM, TO)")
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    p.add_argument("--natural", action="store_true")
    p.add_argument("--weights", type=_weights, default=ALPHA, metavar="a,b,c,d")
    p.add_argument("--jobs", type=_positive, default=None)
    p.add_argument("--checkpoint", type=Path, default=None)
    p.add_argument("--out", type=Path, default=None, help="JSON Lines report (default stdout)")

    p = sub.add_parser("exceptions", help="list m < BOUND without a natural representation")
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--weights", type=_weights, default=ALPHA, metavar="a,b,c,d")
    p.add_argument("--integer", action="store_true", help="allow signed solutions")
    p.add_argument("--jobs", type=_positive, default=None)

    p = sub.add_parser("identities", help="check the transfer identities and the P4 table")
    p.add_argument("--file", type=Path, default=None, help="check identities from this file instead")
    p.add_argument("--export", action="store_true", help="print the identity table and exit")

    p = sub.add_parser("bench", help="time the oracle against the constructive solver")
    p.add_argument("--sample", type=_positive, default=200)
    p.add_argument("--max-m", type=_positive, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _solve(cfg: CliConfig, fh: TextIO) -> int:
    m = cfg.m
    sol: Optional[Solution]
    if cfg.weights != ALPHA:
        ns = None if cfg.n is None else [cfg.n]
        sol = verifier.oracle_solve(m, cfg.weights, cfg.natural, ns=ns)
    elif cfg.n is not None:
        sol = solver.solve_with_n(m, cfg.n)
        if sol is not None and cfg.natural:
            sol = solver._naturalized(sol)
            if sol is None and m <= verifier.ORACLE_MAX_M:
                sol = verifier.oracle_solve(m, ALPHA, True, ns=[cfg.n])
        if sol is None:
            _emit(fh, {"m": m, "n": cfg.n, "stall": True, "weights": list(cfg.weights), "mode": cfg.mode})
            return EXIT_FAIL
    elif cfg.natural:
        sol = solver.solve_135_natural(m)
    else:
        sol = solver.solve_135_integer(m)
    if sol is None:
        _emit(fh, {"m": m, "solution": None, "weights": list(cfg.weights), "mode": cfg.mode})
        return EXIT_FAIL
    if not sol.is_valid(m) or (cfg.natural and not sol.is_natural()):
        raise InvariantViolation(f"solver returned an invalid tuple {sol} for m={m}")
    _emit(fh, sol.record(m, cfg.mode))
    return EXIT_OK


def _verify(cfg: CliConfig, fh: TextIO) -> int:
    report = verifier.verify_range(
        cfg.lo, cfg.hi, cfg.weights, cfg.natural, jobs=cfg.jobs, checkpoint=cfg.checkpoint
    )
    logging.getLogger(__name__).info(
        "verified %d values in %.2fs, %d failures", report.verified_count, report.elapsed, len(report.failures)
    )
    if cfg.out is not None:
        with open(cfg.out, "w") as out:
            verifier.write_jsonl(report, out)
    else:
        verifier.write_jsonl(report, fh)
    return EXIT_FAIL if report.failures else EXIT_OK


def _exceptions(cfg: CliConfig, fh: TextIO) -> int:
    failures = verifier.find_exceptions(cfg.hi, cfg.weights, cfg.natural, jobs=cfg.jobs)
    for m in failures:
        _emit(fh, {"m": m, "weights": list(cfg.weights), "mode": cfg.mode})
    return EXIT_FAIL if failures else EXIT_OK


def _identities(path: Optional[Path], export: bool, fh: TextIO) -> int:
    if export:
        fh.write(format_identities())
        return EXIT_OK
    table = IDENTITIES if path is None else parse_identities(path.read_text())
    ok = True
    for ident in table:
        passed = ident.holds()
        ok &= passed
        fh.write(f"{'PASS' if passed else 'FAIL'} {ident.name}: {ident.rho} | {ident.sigma} | {ident.target}\n")
    if path is None:
        for ell, expected in P4_TABLE:
            got = p4_partition_count(ell)
            passed = got == expected
            ok &= passed
            fh.write(f"{'PASS' if passed else 'FAIL'} P4({ell}) = {got}\n")
    fh.flush()
    return EXIT_OK if ok else EXIT_FAIL


def _bench(sample: int, max_m: int, seed: int, fh: TextIO) -> int:
    rng = random.Random(seed)
    ms = [rng.randint(1, max_m) for _ in range(sample)]
    verifier.oracle_solve(1)  # exclude kernel compilation from the timing
    timings = {}
    for name, fn in (
        ("oracle_integer", lambda m: verifier.oracle_solve(m, ALPHA, False)),
        ("constructive_integer", solver.solve_135_integer),
        ("oracle_natural", lambda m: verifier.oracle_solve(m, ALPHA, True)),
        ("constructive_natural", solver.solve_135_natural),
    ):
        start = time.perf_counter()
        for m in ms:
            sol = fn(m)
            if sol is None or not sol.is_valid(m):
                raise InvariantViolation(f"{name} failed on m={m}")
        timings[name] = time.perf_counter() - start
    _emit(fh, {"sample": sample, "max_m": max_m, "seed": seed,
               **{k: round(v, 6) for k, v in timings.items()}})
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    fh = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "solve":
            cfg = CliConfig("solve", m=args.m, weights=args.weights, natural=args.natural, n=args.n)
            return _solve(cfg, fh)
        if args.command == "verify":
            cfg = CliConfig(
                "verify", lo=args.lo, hi=args.hi, weights=args.weights, natural=args.natural,
                jobs=args.jobs or _default_jobs(), checkpoint=args.checkpoint, out=args.out,
            )
            return _verify(cfg, fh)
        if args.command == "exceptions":
            cfg = CliConfig(
                "exceptions", hi=args.bound, weights=args.weights, natural=not args.integer,
                jobs=args.jobs or _default_jobs(),
            )
            return _exceptions(cfg, fh)
        if args.command == "identities":
            return _identities(args.file, args.export, fh)
        if args.command == "bench":
            return _bench(args.sample, args.max_m, args.seed, fh)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ConfigurationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
