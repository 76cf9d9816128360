from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .quaternion import ALPHA, Quat

__all__ = ["Solution", "MAX_M"]

# Largest m accepted anywhere in the public API.
MAX_M = 10**14


@dataclass(frozen=True)
class Solution:
    """x^2+y^2+z^2+t^2 = m together with a*x + b*y + c*z + d*t = n^2."""

    x: int
    y: int
    z: int
    t: int
    n: int
    weights: Quat = ALPHA
    route: str = field(default="constructive", compare=False)

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.z, self.t)

    @property
    def m(self) -> int:
        return self.x * self.x + self.y * self.y + self.z * self.z + self.t * self.t

    @property
    def weighted_sum(self) -> int:
        a, b, c, d = self.weights
        return a * self.x + b * self.y + c * self.z + d * self.t

    def is_valid(self, m: int) -> bool:
        return self.m == m and self.weighted_sum == self.n * self.n

    def is_natural(self) -> bool:
        return min(self.coords) >= 0

    def scaled(self, factor: int) -> "Solution":
        """Multiply the tuple by a square ``factor``; n is multiplied by its root."""
        root = isqrt(factor)
        if root * root != factor or factor < 1:
            raise ValueError("scale factor must be a positive square")
        return Solution(
            self.x * factor, self.y * factor, self.z * factor, self.t * factor,
            self.n * root, self.weights, self.route,
        )

    def record(self, m: int, mode: str) -> dict:
        return {
            "m": m,
            "n": self.n,
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "t": self.t,
            "weights": list(self.weights),
            "mode": mode,
        }
