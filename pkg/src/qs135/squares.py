"""Perfect squares, Legendre three-square decompositions and four-square partitions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import isqrt
from typing import Iterator, Optional

from .quaternion import ENUMERATION_CAP, ConfigurationError

__all__ = [
    "ThreeSquares",
    "exact_sqrt",
    "is_perfect_square",
    "is_three_square_representable",
    "three_square_decompositions",
    "iter_three_square_decompositions",
    "p4_partition_count",
    "DEFAULT_DECOMPOSITION_LIMIT",
]

DEFAULT_DECOMPOSITION_LIMIT = 32


@dataclass(frozen=True)
class ThreeSquares:
    """Canonical A^2 + B^2 + C^2 = N with A >= B >= C >= 0."""

    A: int
    B: int
    C: int
    N: int

    def __post_init__(self):
        if self.A * self.A + self.B * self.B + self.C * self.C != self.N:
            raise ValueError(f"{self.A}^2+{self.B}^2+{self.C}^2 != {self.N}")

    def signed_variants(self) -> Iterator[tuple[int, int, int]]:
        """Distinct signed permutations of (A, B, C), canonical triple first."""
        seen = set()
        for perm in permutations((self.A, self.B, self.C)):
            for signs in product((1, -1), repeat=3):
                triple = (perm[0] * signs[0], perm[1] * signs[1], perm[2] * signs[2])
                if triple not in seen:
                    seen.add(triple)
                    yield triple


def exact_sqrt(v: int) -> Optional[int]:
    """Return r >= 0 with r*r == v, or None when v is not a perfect square."""
    if v < 0:
        return None
    r = isqrt(v)
    return r if r * r == v else None


def is_perfect_square(v: int) -> bool:
    return exact_sqrt(v) is not None


def is_three_square_representable(N: int) -> bool:
    """True iff N >= 0 is not of the form 4^r (8s + 7)."""
    if N < 0:
        return False
    if N == 0:
        return True
    while N % 4 == 0:
        N //= 4
    return N % 8 != 7


def iter_three_square_decompositions(N: int, limit: Optional[int] = None) -> Iterator[ThreeSquares]:
    """Canonical decompositions of N, by descending A then descending B."""
    if not is_three_square_representable(N):
        raise ValueError(f"{N} is not a sum of three squares")
    produced = 0
    a = isqrt(N)
    while a >= 0 and 3 * a * a >= N:
        rest = N - a * a
        b = min(a, isqrt(rest))
        while b >= 0 and 2 * b * b >= rest:
            c = exact_sqrt(rest - b * b)
            if c is not None:
                yield ThreeSquares(a, b, c, N)
                produced += 1
                if limit is not None and produced >= limit:
                    return
            b -= 1
        a -= 1


def three_square_decompositions(
    N: int, limit: Optional[int] = DEFAULT_DECOMPOSITION_LIMIT
) -> list[ThreeSquares]:
    """Up to ``limit`` canonical decompositions (all of them for ``limit=None``)."""
    return list(iter_three_square_decompositions(N, limit))


def p4_partition_count(ell: int, cap: int = ENUMERATION_CAP) -> int:
    """Number of a1 >= a2 >= a3 >= a4 >= 0 with a1^2 + a2^2 + a3^2 + a4^2 == ell."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if ell > cap:
        raise ConfigurationError(f"{ell} exceeds enumeration cap {cap}")
    count = 0
    for a1 in range(isqrt(ell), -1, -1):
        if 4 * a1 * a1 < ell:
            break
        r1 = ell - a1 * a1
        for a2 in range(min(a1, isqrt(r1)), -1, -1):
            if 3 * a2 * a2 < r1:
                break
            r2 = r1 - a2 * a2
            for a3 in range(min(a2, isqrt(r2)), -1, -1):
                if 2 * a3 * a3 < r2:
                    break
                a4 = exact_sqrt(r2 - a3 * a3)
                if a4 is not None and a4 <= a3:
                    count += 1
    return count
