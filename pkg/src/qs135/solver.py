"""Constructive solutions of x^2+y^2+z^2+t^2 = m with x + 3y + 5z = n^2.

The pipeline writes 35m - n^4 = A^2 + B^2 + C^2, factors
delta = n^2 + Ai + Bj + Ck as gamma * zeta with N(zeta) = 35 and, when zeta
falls in the (1,3,3,4) class, walks a bounded graph of equivalent
1-3-3-4 solutions until one of the prime-conjugation transfers lands in
the (1,3,5) class.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterable, Iterator, Optional

from .quaternion import (
    ALPHA,
    BETA,
    InvariantViolation,
    Quat,
    enumerate_norm,
)
from .solution import MAX_M, Solution
from .squares import (
    DEFAULT_DECOMPOSITION_LIMIT,
    is_three_square_representable,
    iter_three_square_decompositions,
    p4_partition_count,
)
from .transfer import (
    IDENTITIES,
    Class35,
    TransferIdentity,
    classify35,
    first_right_divisor,
    from_tuple,
    normalize_to,
    rank_one_profile,
    to_tuple,
    transfer,
)

__all__ = [
    "BetaSolution",
    "TransformationStep",
    "NCandidate",
    "NWindow",
    "NoSolutionError",
    "KINDS",
    "candidate_ns",
    "is_conforming",
    "guaranteed_parity",
    "alpha_exit",
    "apply_transformation",
    "transformation_step",
    "generic_successor",
    "cascade",
    "solve_with_n",
    "solve_135_integer",
    "solve_135_natural",
    "solve_weighted",
    "natural_window",
    "CASCADE_CAP",
    "SMALL_M_TAIL",
]

log = logging.getLogger(__name__)

CASCADE_CAP = 64
# below this the candidate window may hold fewer than ten consecutive n
SMALL_M_TAIL = 286


class NoSolutionError(LookupError):
    """A restricted search finished without finding a representation."""


@dataclass(frozen=True)
class BetaSolution:
    """A solution of x0^2+y0^2+z0^2+t0^2 = m, x0 + 3y0 + 3z0 + 4t0 = n^2."""

    x0: int
    y0: int
    z0: int
    t0: int
    n: int

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.x0, self.y0, self.z0, self.t0)

    @property
    def m(self) -> int:
        return self.x0**2 + self.y0**2 + self.z0**2 + self.t0**2

    @property
    def A(self) -> int:
        return 3 * self.x0 - self.y0 - 4 * self.z0 + 3 * self.t0

    @property
    def B(self) -> int:
        return 3 * self.x0 + 4 * self.y0 - self.z0 - 3 * self.t0

    @property
    def C(self) -> int:
        return 4 * self.x0 - 3 * self.y0 + 3 * self.z0 - self.t0

    @property
    def gamma(self) -> Quat:
        return from_tuple(self.coords)

    def is_valid(self) -> bool:
        return self.x0 + 3 * self.y0 + 3 * self.z0 + 4 * self.t0 == self.n * self.n

    def swapped(self) -> "BetaSolution":
        """The y0 <-> z0 mirror, which solves the same system."""
        return BetaSolution(self.x0, self.z0, self.y0, self.t0, self.n)


KINDS = ("P3-2", "P3-3", "M5-A", "M5-neg2A", "M7-4A", "M7-2A", "M7-negA")

_BY_NAME = {ident.name: ident for ident in IDENTITIES}
# which transfer identity each successor kind realizes
KIND_IDENTITY: dict[str, TransferIdentity] = {
    "P3-2": _BY_NAME["P3-2"],
    "P3-3": _BY_NAME["P3-3"],
    "M5-A": _BY_NAME["P5-3"],
    "M5-neg2A": _BY_NAME["P5-1"],
    "M7-4A": _BY_NAME["P7-1"],
    "M7-2A": _BY_NAME["P7-2"],
    "M7-negA": _BY_NAME["P7-3"],
}
_EXITS = tuple(
    (ident, rank_one_profile(ident.rho, ident.sigma))
    for ident in IDENTITIES
    if classify35(ident.target) is Class35.Alpha
)


@dataclass(frozen=True)
class TransformationStep:
    kind: str
    shift: int


def transformation_step(b: BetaSolution, kind: str) -> Optional[TransformationStep]:
    """The step of ``kind`` with its exact shift quotient, or None if it does not apply."""
    x, y, z, t = b.coords
    if kind == "M5-A":
        num, p = x - 2 * y - z + 2 * t, 5
    elif kind == "M5-neg2A":
        num, p = y - 3 * x, 5
    elif kind == "M7-4A":
        num, p = x + 4 * z + 2 * t, 7
    elif kind == "M7-2A":
        num, p = x - y + 2 * z - t, 7
    elif kind == "M7-negA":
        num, p = x + 4 * y - 2 * z, 7
    elif kind == "P3-2":
        return TransformationStep(kind, 0) if (x + y - t) % 3 == 0 else None
    elif kind == "P3-3":
        return TransformationStep(kind, 0) if (x + z - t) % 3 == 0 else None
    else:
        raise ValueError(f"unknown transformation kind {kind!r}")
    if num % p:
        return None
    return TransformationStep(kind, num // p)


def generic_successor(b: BetaSolution, ident: TransferIdentity) -> Optional[BetaSolution]:
    """Transfer through ``ident`` and renormalize onto beta; None if not integral."""
    g = transfer(b.gamma, ident.rho, ident.sigma)
    if g is None:
        return None
    return BetaSolution(*to_tuple(normalize_to(g, ident.target, BETA)), b.n)


def apply_transformation(b: BetaSolution, kind: str) -> Optional[BetaSolution]:
    step = transformation_step(b, kind)
    if step is None:
        return None
    x, y, z, t = b.coords
    k = step.shift
    if kind == "M5-A":
        return BetaSolution(x - k, y + 2 * k, z + k, t - 2 * k, b.n)
    if kind == "M5-neg2A":
        return BetaSolution(x + 3 * k, y - k, z, t, b.n)
    if kind == "M7-4A":
        return BetaSolution(x + z - k, -2 * z + 3 * k, y, 2 * z + t - 2 * k, b.n)
    if kind == "M7-2A":
        return BetaSolution(x - 2 * k, y + 2 * k, z - 4 * k, t + 2 * k, b.n)
    if kind == "M7-negA":
        return BetaSolution(2 * y - z - 2 * k, 2 * y - 3 * k, -3 * y + 2 * z + 6 * k, t, b.n)
    return generic_successor(b, KIND_IDENTITY[kind])


def alpha_exit(b: BetaSolution) -> Optional[Solution]:
    """Try every transfer whose target is in the (1,3,5) class."""
    gamma = b.gamma
    for ident, profile in _EXITS:
        if not profile.criterion(gamma):
            continue
        g = transfer(gamma, ident.rho, ident.sigma)
        if g is None:
            raise InvariantViolation(f"criterion of {ident.name} accepted a non-integral transfer")
        sol = to_tuple(normalize_to(g, ident.target, ALPHA))
        return Solution(*sol, n=b.n)
    return None


def cascade(start: BetaSolution, cap: int = CASCADE_CAP) -> Optional[Solution]:
    """Breadth-first search over linked 1-3-3-4 solutions; None means it stalled."""
    seen = {min(start.coords, start.swapped().coords)}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        variants = (cur, cur.swapped())
        for v in variants:
            sol = alpha_exit(v)
            if sol is not None:
                return sol
        for kind in KINDS:
            for v in variants:
                nxt = apply_transformation(v, kind)
                if nxt is None:
                    continue
                key = min(nxt.coords, nxt.swapped().coords)
                if key in seen or len(seen) >= cap:
                    continue
                seen.add(key)
                queue.append(nxt)
    return None


@dataclass(frozen=True)
class NCandidate:
    n: int
    odd: bool
    conforming: bool


@dataclass
class NWindow:
    m: int
    candidates: list[NCandidate] = field(default_factory=list)

    @property
    def ns(self) -> list[int]:
        return [c.n for c in self.candidates]


def is_conforming(m: int, n: int) -> bool:
    """Congruence condition on n under which the transfer cascade cannot stall."""
    r = m % 3
    if r == 0:
        return gcd(n, 15) == 1
    if r == 1:
        return n % 3 == 0 and n % 5 != 0
    return gcd(n, 105) == 1


def guaranteed_parity(m: int) -> Optional[int]:
    """Parity (0 even, 1 odd) of n for which 35m - n^4 is always a sum of three squares."""
    if m % 16 == 0:
        return None
    if m % 8 in (1, 3, 7):
        return 0
    if m % 8 in (2, 4, 5, 6):
        return 1
    return 0  # m = 8 (mod 16)


def candidate_ns(
    m: int,
    order: str = "ascending",
    window: Optional[range] = None,
    conforming_only: bool = True,
) -> NWindow:
    if m < 1:
        raise ValueError("m must be positive")
    top = isqrt(isqrt(35 * m))
    ns: Iterable[int] = range(0, top + 1)
    if window is not None:
        ns = (n for n in window if 0 <= n <= top)
    out = NWindow(m)
    for n in sorted(set(ns)):
        if not is_three_square_representable(35 * m - n**4):
            continue
        ok = is_conforming(m, n)
        if conforming_only and not ok:
            continue
        out.candidates.append(NCandidate(n, bool(n % 2), ok))
    if order == "descending":
        out.candidates.reverse()
    elif order != "ascending":
        raise ValueError(f"order must be ascending or descending, not {order!r}")
    return out


def _pipeline(m: int, n: int, a: int, b: int, c: int) -> Optional[Solution]:
    delta = Quat(n * n, a, b, c)
    found = first_right_divisor(delta, 35, prefer=Class35.Alpha)
    if found is None:
        raise InvariantViolation(f"{delta} has no right divisor of norm 35")
    gamma, zeta = found
    if classify35(zeta) is Class35.Alpha:
        return Solution(*to_tuple(normalize_to(gamma, zeta, ALPHA)), n=n)
    start = BetaSolution(*to_tuple(normalize_to(gamma, zeta, BETA)), n)
    return cascade(start)


def _attempts(m: int, n: int, limit: Optional[int]) -> Iterator[Solution]:
    for dec in iter_three_square_decompositions(35 * m - n**4, limit):
        sol = _pipeline(m, n, dec.A, dec.B, dec.C)
        if sol is not None:
            yield sol


def solve_with_n(m: int, n: int, limit: Optional[int] = DEFAULT_DECOMPOSITION_LIMIT) -> Optional[Solution]:
    """Constructive attempt at one fixed n, without congruence filtering; None on stall."""
    _check_m(m)
    if n < 0 or n**4 > 35 * m or not is_three_square_representable(35 * m - n**4):
        return None
    return next(_attempts(m, n, limit), None)


def _check_m(m: int) -> None:
    if not 1 <= m <= MAX_M:
        raise ValueError(f"m must lie in [1, {MAX_M}], got {m}")


def _oracle(m: int, natural: bool, ns=None) -> Optional[Solution]:
    from .verifier import ORACLE_MAX_M, oracle_solve

    if m > ORACLE_MAX_M:
        return None
    return oracle_solve(m, ALPHA, natural, ns=ns)


def solve_135_integer(m: int, ns: Optional[Iterable[int]] = None) -> Solution:
    """Integers x, y, z, t with x^2+y^2+z^2+t^2 = m and x + 3y + 5z a square.

    Multiples of 16 are reduced by descent. ``ns`` pins the admissible values
    of n instead (no descent); if none of them works NoSolutionError is raised.
    """
    _check_m(m)
    if ns is None and m % 16 == 0:
        sol = solve_135_integer(m // 16)
        return Solution(*sol.scaled(4).coords, n=sol.n * 2, route="descent")
    window = None if ns is None else sorted(set(ns))
    for cand in candidate_ns(m, "ascending", window).candidates:
        sol = next(_attempts(m, cand.n, DEFAULT_DECOMPOSITION_LIMIT), None)
        if sol is not None:
            return sol
        log.debug("m=%d: conforming n=%d stalled on every decomposition", m, cand.n)
    sol = _oracle(m, natural=False, ns=window)
    if sol is not None:
        return sol
    if ns is not None:
        raise NoSolutionError(f"no integer representation of {m} with n in {window}")
    raise InvariantViolation(f"no integer representation found for m={m}")


def natural_window(m: int) -> range:
    """Integers n with 34m <= n^4 <= 35m."""
    lo = isqrt(isqrt(34 * m))
    if lo**4 < 34 * m:
        lo += 1
    return range(lo, isqrt(isqrt(35 * m)) + 1)


def _naturalized(sol: Solution) -> Optional[Solution]:
    # t carries zero weight, so its sign is free
    if sol.x < 0 or sol.y < 0 or sol.z < 0:
        return None
    return Solution(sol.x, sol.y, sol.z, abs(sol.t), sol.n, sol.weights, sol.route)


def solve_135_natural(m: int) -> Optional[Solution]:
    """Nonnegative x, y, z, t with x^2+y^2+z^2+t^2 = m and x + 3y + 5z a square.

    Returns None only when the exhaustive oracle confirms there is none.
    """
    _check_m(m)
    if m % 16 == 0:
        sol = solve_135_natural(m // 16)
        if sol is not None:
            return Solution(*sol.scaled(4).coords, n=sol.n * 2, route="descent")
    for cand in candidate_ns(m, "descending").candidates:
        for sol in _attempts(m, cand.n, DEFAULT_DECOMPOSITION_LIMIT):
            nat = _naturalized(sol)
            if nat is not None:
                return nat
    sol = _oracle(m, natural=True)
    if sol is None and m <= 10**9:
        return None
    if sol is None:
        raise InvariantViolation(f"no natural representation found for m={m}")
    return sol


def solve_weighted(m: int, n: int, ell: int) -> tuple[Quat, Solution]:
    """Find nonnegative weights of norm ``ell`` and a solution of the weighted system."""
    if m < 1 or n < 0 or ell < 1:
        raise ValueError("need m >= 1, n >= 0, ell >= 1")
    rest = m * ell - n**4
    if not is_three_square_representable(rest):
        raise ValueError(f"m*ell - n^4 = {rest} is not a sum of three squares")
    for dec in iter_three_square_decompositions(rest, None):
        delta = Quat(n * n, dec.A, dec.B, dec.C)
        found = first_right_divisor(delta, ell)
        if found is None:
            continue
        gamma, zeta = found
        sol = list(to_tuple(gamma))
        weights = list(zeta)
        for i in range(4):
            if weights[i] < 0:
                weights[i] = -weights[i]
                sol[i] = -sol[i]
        return Quat(*weights), Solution(*sol, n=n, weights=Quat(*weights))
    raise InvariantViolation(f"no right divisor of norm {ell} for any decomposition of {rest}")


def forced_weights(ell: int) -> Optional[tuple[int, ...]]:
    """The only weight multiset of norm ``ell`` (descending) when P4(ell) == 1."""
    if p4_partition_count(ell) != 1:
        return None
    q = next(q for q in enumerate_norm(ell))
    return tuple(sorted(map(abs, q), reverse=True))
