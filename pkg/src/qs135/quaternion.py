"""Exact arithmetic on Lipschitz integers a + bi + cj + dk.

Quaternions are immutable 4-tuples of Python ints, so ordering, hashing
and unpacking come from ``tuple``. The arithmetic operators are overridden
with the Hamilton product and coordinate-wise sums.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import gcd, isqrt
from typing import Iterator, NamedTuple, Optional

__all__ = [
    "Quat",
    "SignedPerm",
    "ONE",
    "I",
    "J",
    "K",
    "UNITS",
    "ALPHA",
    "BETA",
    "ConfigurationError",
    "InvariantViolation",
    "mul",
    "conj",
    "norm",
    "dot",
    "exact_right_quotient",
    "enumerate_norm",
    "signed_perms",
    "orbit",
    "find_signed_perm",
    "is_primitive",
    "ENUMERATION_CAP",
]

# Largest norm enumerate_norm accepts unless overridden by the caller.
ENUMERATION_CAP = 10**6


class ConfigurationError(ValueError):
    """A request exceeded a configured limit or named an unusable resource."""


class InvariantViolation(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


class Quat(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __mul__(self, other):  # type: ignore[override]
        if isinstance(other, int):
            return Quat(self.a * other, self.b * other, self.c * other, self.d * other)
        return mul(self, other)

    def __rmul__(self, other):  # type: ignore[override]
        if isinstance(other, int):
            return Quat(self.a * other, self.b * other, self.c * other, self.d * other)
        return NotImplemented

    def __add__(self, other):  # type: ignore[override]
        return Quat(self.a + other[0], self.b + other[1], self.c + other[2], self.d + other[3])

    def __sub__(self, other):
        return Quat(self.a - other[0], self.b - other[1], self.c - other[2], self.d - other[3])

    def __neg__(self):
        return Quat(-self.a, -self.b, -self.c, -self.d)

    def __str__(self) -> str:
        parts = []
        for coeff, unit in zip(self, ("", "i", "j", "k")):
            if coeff == 0:
                continue
            mag = abs(coeff)
            body = unit if (unit and mag == 1) else f"{mag}{unit}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f"{sign}{body}"
        return out

    @classmethod
    def parse(cls, text: str) -> "Quat":
        """Parse either ``a,b,c,d`` or an expression such as ``1+3i-5j+k``."""
        text = text.replace(" ", "").replace("−", "-")
        if "," in text:
            fields = text.split(",")
            if len(fields) != 4:
                raise ValueError(f"expected four coordinates, got {text!r}")
            return cls(*(int(f) for f in fields))
        coords = [0, 0, 0, 0]
        slot = {"": 0, "i": 1, "j": 2, "k": 3}
        pos = 0
        if not text:
            raise ValueError("empty quaternion")
        while pos < len(text):
            sign = 1
            if text[pos] in "+-":
                sign = -1 if text[pos] == "-" else 1
                pos += 1
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            digits = text[start:pos]
            unit = ""
            if pos < len(text) and text[pos] in "ijk":
                unit = text[pos]
                pos += 1
            if not digits and not unit:
                raise ValueError(f"cannot parse quaternion {text!r}")
            coords[slot[unit]] += sign * (int(digits) if digits else 1)
        return cls(*coords)


ONE = Quat(1, 0, 0, 0)
I = Quat(0, 1, 0, 0)
J = Quat(0, 0, 1, 0)
K = Quat(0, 0, 0, 1)
UNITS: tuple[Quat, ...] = tuple(
    sorted(Quat(*(s if i == slot else 0 for i in range(4))) for slot in range(4) for s in (1, -1))
)
ALPHA = Quat(1, 3, 5, 0)
BETA = Quat(1, 3, 3, 4)


def mul(p: Quat, q: Quat) -> Quat:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return Quat(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def conj(q: Quat) -> Quat:
    return Quat(q[0], -q[1], -q[2], -q[3])


def norm(q: Quat) -> int:
    a, b, c, d = q
    return a * a + b * b + c * c + d * d


def dot(p: Quat, q: Quat) -> int:
    """Euclidean inner product, equal to the real part of conj(p) * q."""
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3]


def exact_right_quotient(delta: Quat, zeta: Quat) -> Optional[Quat]:
    """Return gamma with ``delta == gamma * zeta``, or None if gamma is not Lipschitz."""
    n = norm(zeta)
    if n == 0:
        raise ValueError("division by the zero quaternion")
    a, b, c, d = mul(delta, conj(zeta))
    if a % n or b % n or c % n or d % n:
        return None
    return Quat(a // n, b // n, c // n, d // n)


def _two_square_tails(rest: int) -> Iterator[tuple[int, int]]:
    # all (c, d) with c*c + d*d == rest, ascending in c then d
    top = isqrt(rest)
    for c in range(-top, top + 1):
        r = rest - c * c
        d = isqrt(r)
        if d * d == r:
            if d == 0:
                yield c, 0
            else:
                yield c, -d
                yield c, d


@lru_cache(maxsize=256)
def _enumerate_norm_cached(ell: int) -> tuple[Quat, ...]:
    out = []
    top = isqrt(ell)
    for a in range(-top, top + 1):
        ra = ell - a * a
        tb = isqrt(ra)
        for b in range(-tb, tb + 1):
            for c, d in _two_square_tails(ra - b * b):
                out.append(Quat(a, b, c, d))
    return tuple(out)


def enumerate_norm(ell: int, cap: int = ENUMERATION_CAP) -> list[Quat]:
    """All quaternions of norm ``ell`` in lexicographic order of coordinates."""
    if ell < 0:
        raise ValueError("norm must be nonnegative")
    if ell > cap:
        raise ConfigurationError(f"norm {ell} exceeds enumeration cap {cap}")
    return list(_enumerate_norm_cached(ell))


class SignedPerm(NamedTuple):
    """Coordinate permutation with sign changes: ``out[i] = signs[i] * q[perm[i]]``.

    ``signs`` holds sign bits (0 for +, 1 for -), so the natural tuple order
    puts the identity first.
    """

    perm: tuple[int, int, int, int]
    signs: tuple[int, int, int, int]

    def __call__(self, q):
        p, s = self.perm, self.signs
        return Quat(*(-q[p[i]] if s[i] else q[p[i]] for i in range(4)))

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """The map ``q -> self(other(q))``."""
        perm = tuple(other.perm[self.perm[i]] for i in range(4))
        signs = tuple(self.signs[i] ^ other.signs[self.perm[i]] for i in range(4))
        return SignedPerm(perm, signs)  # type: ignore[arg-type]

    def inverse(self) -> "SignedPerm":
        perm = [0] * 4
        signs = [0] * 4
        for i in range(4):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return SignedPerm(tuple(perm), tuple(signs))  # type: ignore[arg-type]

    @classmethod
    def identity(cls) -> "SignedPerm":
        return cls((0, 1, 2, 3), (0, 0, 0, 0))


@lru_cache(maxsize=1)
def signed_perms() -> tuple[SignedPerm, ...]:
    """The 384 signed permutations in encoding order."""
    return tuple(
        SignedPerm(perm, signs)  # type: ignore[arg-type]
        for perm in permutations(range(4))
        for signs in product((0, 1), repeat=4)
    )


def orbit(q: Quat) -> frozenset[Quat]:
    return frozenset(pi(q) for pi in signed_perms())


@lru_cache(maxsize=4096)
def find_signed_perm(source: Quat, target: Quat) -> Optional[SignedPerm]:
    """Smallest signed permutation (in encoding order) sending source to target."""
    if sorted(map(abs, source)) != sorted(map(abs, target)):
        return None
    for perm in permutations(range(4)):
        if all(abs(source[perm[i]]) == abs(target[i]) for i in range(4)):
            # a zero slot takes the + sign bit, which is the smaller encoding
            signs = tuple(int(source[perm[i]] != target[i]) for i in range(4))
            return SignedPerm(perm, signs)  # type: ignore[arg-type]
    raise InvariantViolation("matching absolute values but no permutation found")


def is_primitive(q: Quat, k: int) -> bool:
    return gcd(gcd(gcd(q[0], q[1]), gcd(q[2], q[3])), k) == 1
