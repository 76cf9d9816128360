"""Brute-force oracle and chunked, resumable range verification."""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Iterable, Iterator, Optional, TextIO

import numpy as np

from . import _kernel
from .quaternion import ALPHA, ConfigurationError, Quat, norm
from .solution import Solution
from .squares import is_three_square_representable

__all__ = [
    "VerifyReport",
    "oracle_solve",
    "verify_range",
    "find_exceptions",
    "write_jsonl",
    "read_checkpoint",
    "ORACLE_MAX_M",
    "CHUNK_SIZE",
]

log = logging.getLogger(__name__)

ORACLE_MAX_M = 10**9
CHUNK_SIZE = 4096
_CHECKPOINT_INTERVAL = 1.0  # seconds between checkpoint rewrites


def _mode(natural: bool) -> str:
    return "natural" if natural else "integer"


def _search_order(weights: Quat) -> np.ndarray:
    # loop over the two heaviest slots, solve the other two in closed form
    slots = sorted(range(4), key=lambda i: (-abs(weights[i]), i))
    loop, pair = slots[:2], sorted(slots[2:])
    if weights[pair[0]] == 0 and weights[pair[1]] == 0:
        loop[1], pair[1] = pair[1], loop[1]
    return np.array(loop + pair, dtype=np.int64)


def _check_weights(weights: Quat) -> Quat:
    weights = Quat(*weights)
    if norm(weights) == 0:
        raise ValueError("weights must not all be zero")
    return weights


def oracle_solve(
    m: int,
    weights: Quat = ALPHA,
    natural: bool = False,
    ns: Optional[Iterable[int]] = None,
) -> Optional[Solution]:
    """Exhaustive search, n descending; None means no representation exists.

    ``ns`` restricts the search to the given values of n.
    """
    if m < 0 or m > ORACLE_MAX_M:
        raise ValueError(f"oracle accepts 0 <= m <= {ORACLE_MAX_M}, got {m}")
    weights = _check_weights(weights)
    w = np.array(weights, dtype=np.int64)
    order = _search_order(weights)
    out = np.zeros(4, dtype=np.int64)
    if ns is None:
        n = int(_kernel.solve_one(m, w, order, natural, out))
        if n < 0:
            return None
    else:
        lm = norm(weights) * m
        for n in sorted(set(ns), reverse=True):
            if n < 0 or n**4 > lm or not is_three_square_representable(lm - n**4):
                continue
            if _kernel.search_n(m, w, order, n, natural, out):
                break
        else:
            return None
    return Solution(*(int(v) for v in out), n=n, weights=weights, route="oracle")


@dataclass
class VerifyReport:
    lo: int
    hi: int
    weights: Quat
    natural: bool
    verified_count: int = 0
    failures: list[int] = field(default_factory=list)
    elapsed: float = 0.0
    chunks: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def mode(self) -> str:
        return _mode(self.natural)

    def summary(self) -> dict:
        return {
            "summary": True,
            "lo": self.lo,
            "hi": self.hi,
            "weights": list(self.weights),
            "mode": self.mode,
            "verified": self.verified_count,
            "failures": len(self.failures),
        }


def _scan_chunk(task: tuple[int, int, tuple[int, ...], bool]) -> list[int]:
    lo, hi, weights, natural = task
    w = np.array(weights, dtype=np.int64)
    buf = np.empty(hi - lo, dtype=np.int64)
    k = _kernel.scan_range(lo, hi, w, _search_order(Quat(*weights)), natural, buf)
    return [int(v) for v in buf[:k]]


def _header(lo: int, hi: int, weights: Quat, natural: bool) -> str:
    return f"v1 {lo} {hi} {','.join(map(str, weights))} {_mode(natural)}"


def read_checkpoint(path: Path, header: str) -> dict[tuple[int, int], list[int]]:
    """Completed chunks recorded in ``path``; empty when the file does not exist."""
    if not path.exists():
        return {}
    lines = path.read_text().splitlines()
    if not lines or lines[0].strip() != header:
        found = lines[0].strip() if lines else "<empty>"
        raise ConfigurationError(f"checkpoint {path} is for {found!r}, not {header!r}")
    done = {}
    for line in lines[1:]:
        fields = line.split()
        if not fields:
            continue
        clo, chi, nfail = (int(f) for f in fields[:3])
        fails = [int(f) for f in fields[3:]]
        if len(fails) != nfail:
            raise ConfigurationError(f"corrupt checkpoint line {line!r}")
        done[(clo, chi)] = fails
    return done


def _write_checkpoint(path: Path, header: str, done: dict[tuple[int, int], list[int]]) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(header + "\n")
        for (clo, chi), fails in sorted(done.items()):
            fh.write(" ".join(map(str, (clo, chi, len(fails), *fails))) + "\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _chunks(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    return [(c, min(c + size, hi)) for c in range(lo, hi, size)]


def verify_range(
    lo: int,
    hi: int,
    weights: Quat = ALPHA,
    natural: bool = True,
    jobs: int = 1,
    checkpoint: Optional[os.PathLike | str] = None,
    chunk_size: int = CHUNK_SIZE,
    max_chunks: Optional[int] = None,
) -> VerifyReport:
    """Check every m in [lo, hi) with the oracle.

    ``max_chunks`` stops after that many new chunks (the report then covers
    only finished chunks); it exists so interrupted runs can be exercised.
    """
    if lo > hi or lo < 0:
        raise ValueError(f"bad range [{lo}, {hi})")
    if hi - 1 > ORACLE_MAX_M:
        raise ValueError(f"range exceeds oracle limit {ORACLE_MAX_M}")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    weights = _check_weights(weights)
    started = time.perf_counter()
    report = VerifyReport(lo, hi, weights, natural)

    header = _header(lo, hi, weights, natural)
    path = Path(checkpoint) if checkpoint is not None else None
    done: dict[tuple[int, int], list[int]] = {}
    if path is not None:
        done = read_checkpoint(path, header)
        try:
            _write_checkpoint(path, header, done)
        except OSError as exc:
            raise ConfigurationError(f"cannot write checkpoint {path}: {exc}") from exc

    chunks = _chunks(lo, hi, chunk_size)
    pending = [c for c in chunks if c not in done]
    if max_chunks is not None:
        pending = pending[:max_chunks]
    resumed = set(done)
    log.info("verify [%d, %d): %d chunks, %d already done", lo, hi, len(chunks), len(resumed))

    tasks = [(clo, chi, tuple(weights), natural) for clo, chi in pending]
    last_write = time.monotonic()
    for (clo, chi), fails in zip(pending, _run(tasks, jobs)):
        done[(clo, chi)] = fails
        if path is not None and time.monotonic() - last_write >= _CHECKPOINT_INTERVAL:
            _write_checkpoint(path, header, done)
            last_write = time.monotonic()
    if path is not None:
        _write_checkpoint(path, header, done)

    for c in chunks:
        if c not in done:
            continue
        fails = done[c]
        report.chunks.append((c[0], c[1], "resumed" if c in resumed else "done"))
        report.failures.extend(fails)
        report.verified_count += (c[1] - c[0]) - len(fails)
    report.failures.sort()
    report.elapsed = time.perf_counter() - started
    return report


def _run(tasks: list, jobs: int) -> Iterator[list[int]]:
    if jobs == 1 or len(tasks) <= 1:
        for task in tasks:
            yield _scan_chunk(task)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map yields in submission order, which keeps the merge deterministic
        yield from pool.map(_scan_chunk, tasks)


def find_exceptions(bound: int, weights: Quat = ALPHA, natural: bool = True, jobs: int = 1) -> list[int]:
    """Every m in [1, bound) without a representation."""
    return verify_range(1, max(bound, 1), weights, natural, jobs=jobs).failures


def write_jsonl(report: VerifyReport, fh: TextIO) -> None:
    """One line per failure, then a summary line; timing is left out so output is reproducible."""
    for m in report.failures:
        rec = {"m": m, "weights": list(report.weights), "mode": report.mode}
        fh.write(json.dumps(rec, separators=(",", ":")) + "\n")
    fh.write(json.dumps(report.summary(), separators=(",", ":")) + "\n")
    fh.flush()


def integer_fourth_root(v: int) -> int:
    return isqrt(isqrt(v))
