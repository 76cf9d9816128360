"""Right-divisor extraction, decomposition classes and the conjugation transfer.

Solution convention: a tuple (x, y, z, t) is carried by the quaternion
gamma = x - yi - zj - tk, so that Re(gamma * (a+bi+cj+dk)) = ax + by + cz + dt.
In other words the solution tuple is ``conj(gamma)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .quaternion import (
    BETA,
    UNITS,
    InvariantViolation,
    Quat,
    conj,
    dot,
    enumerate_norm,
    exact_right_quotient,
    find_signed_perm,
    mul,
    norm,
)

__all__ = [
    "Class35",
    "TransferIdentity",
    "RankOneProfile",
    "IDENTITIES",
    "classify35",
    "right_divisors_of_norm",
    "first_right_divisor",
    "transfer",
    "rank_one_profile",
    "normalize_to",
    "to_tuple",
    "from_tuple",
    "format_identities",
    "parse_identities",
]


class Class35(enum.Enum):
    Alpha = "alpha"
    Beta = "beta"


@dataclass(frozen=True)
class TransferIdentity:
    """beta * rho == sigma * target, with N(rho) == N(sigma) == p and N(target) == 35."""

    name: str
    rho: Quat
    sigma: Quat
    target: Quat

    @property
    def p(self) -> int:
        return norm(self.rho)

    def holds(self) -> bool:
        return (
            mul(BETA, self.rho) == mul(self.sigma, self.target)
            and norm(self.rho) == norm(self.sigma)
            and norm(self.target) == 35
        )


def _ident(name: str, rho: str, sigma: str, target: str) -> TransferIdentity:
    return TransferIdentity(name, Quat.parse(rho), Quat.parse(sigma), Quat.parse(target))


# primes above 3, 5 and 7 multiplied on the right of beta
IDENTITIES: tuple[TransferIdentity, ...] = (
    _ident("P3-0", "1+i-j", "1+i+j", "5+3i+j"),
    _ident("P3-1", "1-i-j", "1+j+k", "3-5j+k"),
    _ident("P3-2", "1+i+j", "1-j+k", "-3+4i+j+3k"),
    _ident("P3-3", "1-i+j", "1+i+k", "3-i+4j+3k"),
    _ident("P5-1", "1+2i", "j-2k", "3-4i+3j-k"),
    _ident("P5-2", "1+2j", "2+i", "-3-i+4j+3k"),
    _ident("P5-3", "1-2k", "1-2i", "3+3i+j+4k"),
    _ident("P5-4", "1-2i", "2+i", "3-i+5k"),
    _ident("P5-5", "1-2j", "-1+2i", "3-5i-j"),
    _ident("P5-6", "1+2k", "j-2k", "-3+5j-k"),
    _ident("P7-1", "1+i+j+2k", "1-i+2j-k", "-3-3i+4j+k"),
    _ident("P7-2", "1-i-j-2k", "1-i+2j-k", "3+i-4j+3k"),
    _ident("P7-3", "1-i+j-2k", "2-i-j+k", "4+i+3j+3k"),
    _ident("P7-4", "1+i-j+2k", "1+i-j-2k", "1+3i+3j-4k"),
    _ident("P7-5", "1+i+j-2k", "-2+i+j-k", "-i-5j-3k"),
    _ident("P7-6", "1-i-j+2k", "-1-2i-j-k", "-3+j-5k"),
    _ident("P7-7", "1+i-j-2k", "-2+i+j-k", "-3i-5j+k"),
    _ident("P7-8", "1-i+j+2k", "1+i-j-2k", "-3+5i+j"),
)


def classify35(zeta: Quat) -> Class35:
    if norm(zeta) != 35:
        raise ValueError(f"{zeta} has norm {norm(zeta)}, not 35")
    return Class35.Alpha if 0 in zeta else Class35.Beta


@lru_cache(maxsize=64)
def _left_unit_classes(ell: int) -> tuple[Quat, ...]:
    # one representative per left-unit class, first in lexicographic order
    reps = []
    seen: set[Quat] = set()
    for q in enumerate_norm(ell):
        if q in seen:
            continue
        reps.append(q)
        seen.update(mul(u, q) for u in UNITS)
    return tuple(reps)


def right_divisors_of_norm(delta: Quat, ell: int) -> list[Quat]:
    """Every zeta of norm ``ell`` with delta = gamma * zeta for a Lipschitz gamma."""
    if ell <= 0 or norm(delta) % ell:
        raise ValueError(f"{ell} does not divide N({delta}) = {norm(delta)}")
    out = []
    for rep in _left_unit_classes(ell):
        if exact_right_quotient(delta, rep) is not None:
            out.extend(mul(u, rep) for u in UNITS)
    return sorted(out)


def first_right_divisor(
    delta: Quat, ell: int, prefer: Optional[Class35] = None
) -> Optional[tuple[Quat, Quat]]:
    """A (gamma, zeta) with delta = gamma * zeta and N(zeta) == ell.

    With ``prefer`` set (ell == 35 only), a divisor of that class is returned
    whenever one exists.
    """
    fallback = None
    for rep in _left_unit_classes(ell):
        gamma = exact_right_quotient(delta, rep)
        if gamma is None:
            continue
        if prefer is None or classify35(rep) is prefer:
            return gamma, rep
        if fallback is None:
            fallback = (gamma, rep)
    return fallback


def transfer(gamma: Quat, rho: Quat, sigma: Quat) -> Optional[Quat]:
    """rho^-1 * gamma * sigma when it is a Lipschitz integer, else None."""
    p = norm(rho)
    if norm(sigma) != p:
        raise ValueError("rho and sigma must have the same norm")
    a, b, c, d = mul(mul(conj(rho), gamma), sigma)
    if a % p or b % p or c % p or d % p:
        return None
    return Quat(a // p, b // p, c // p, d // p)


@dataclass(frozen=True)
class RankOneProfile:
    """conj(rho) * gamma * sigma == dot(gamma, epsilon) * delta_profile (mod p) for all gamma."""

    epsilon: Quat
    delta_profile: Quat
    p: int

    def criterion(self, gamma: Quat) -> bool:
        """True iff rho^-1 * gamma * sigma is a Lipschitz integer."""
        return dot(gamma, self.epsilon) % self.p == 0


def _symmetric(v: int, p: int) -> int:
    v %= p
    return v - p if v > p // 2 else v


def rank_one_profile(rho: Quat, sigma: Quat) -> RankOneProfile:
    p = norm(rho)
    if norm(sigma) != p or p < 3 or p % 2 == 0:
        raise ValueError("rho and sigma need a common odd prime norm")
    basis = (Quat(1, 0, 0, 0), Quat(0, 1, 0, 0), Quat(0, 0, 1, 0), Quat(0, 0, 0, 1))
    images = [Quat(*(_symmetric(v, p) for v in mul(mul(conj(rho), e), sigma))) for e in basis]
    profile = next((im for im in images if any(im)), None)
    if profile is None:
        raise InvariantViolation(f"all basis images vanish mod {p}")
    pivot = next(i for i in range(4) if profile[i])
    inv = pow(profile[pivot], -1, p)
    eps = []
    for im in images:
        lam = im[pivot] * inv % p
        if any((im[c] - lam * profile[c]) % p for c in range(4)):
            raise InvariantViolation(f"basis images of {rho}, {sigma} are not rank one mod {p}")
        eps.append(_symmetric(lam, p))
    return RankOneProfile(Quat(*eps), profile, p)


def to_tuple(gamma: Quat) -> Quat:
    """Solution tuple (x, y, z, t) carried by gamma."""
    return conj(gamma)


def from_tuple(sol: Iterable[int]) -> Quat:
    """gamma = x - yi - zj - tk for a solution tuple."""
    x, y, z, t = sol
    return Quat(x, -y, -z, -t)


def normalize_to(gamma: Quat, zeta: Quat, target: Quat) -> Quat:
    """gamma' with Re(gamma' * target) == Re(gamma * zeta) and the same norm."""
    pi = find_signed_perm(zeta, target)
    if pi is None:
        raise ValueError(f"{zeta} is not in the decomposition class of {target}")
    return from_tuple(pi(to_tuple(gamma)))


def format_identities(identities: Iterable[TransferIdentity] = IDENTITIES) -> str:
    """One identity per line: ``rho | sigma | target``."""
    return "".join(f"{t.rho} | {t.sigma} | {t.target}\n" for t in identities)


def parse_identities(text: str) -> list[TransferIdentity]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 3:
            raise ValueError(f"line {lineno}: expected 'rho | sigma | target'")
        out.append(_ident(f"line{lineno}", *fields))
    return out
