"""Compiled search loops behind the brute-force oracle.

For a weight vector w and target n^2 the search fixes the two coordinates
with the largest |w| (f1, f2) and solves the remaining pair (u, v) in
closed form: p*u + q*v = R and u^2 + v^2 = Q has integer solutions iff
W = (p^2+q^2) Q - R^2 is a perfect square w^2, giving
u = (pR + qw)/s, v = (qR - pw)/s for either sign of w.
"""

from __future__ import annotations

import math

import numba
import numpy as np


@numba.njit(cache=True, inline="always")
def _isqrt(v):
    r = np.int64(math.sqrt(np.float64(v)))
    while r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


@numba.njit(cache=True, inline="always")
def _three_square_ok(v):
    if v < 0:
        return False
    if v == 0:
        return True
    while v % 4 == 0:
        v //= 4
    return v % 8 != 7


@numba.njit(cache=True)
def _single_weight(m, w1, N, order, natural, out):
    # only slot order[0] is weighted: it is forced to N / w1, the rest is three squares
    if N % w1 != 0:
        return False
    f1 = N // w1
    if natural and f1 < 0:
        return False
    q0 = m - f1 * f1
    if not _three_square_ok(q0):
        return False
    for f2 in range(_isqrt(q0), -1, -1):
        r = q0 - f2 * f2
        u = _isqrt(r)
        while u >= 0 and 2 * u * u >= r:
            v = _isqrt(r - u * u)
            if v * v == r - u * u:
                out[order[0]] = f1
                out[order[1]] = f2
                out[order[2]] = u
                out[order[3]] = v
                return True
            u -= 1
    return False


@numba.njit(cache=True)
def search_n(m, w, order, n, natural, out):
    """Look for a solution at this n; fills out[0:4] in slot order and returns True on a hit.

    ``order`` lists slot indices: loop slots first (outer, inner), then the
    solved pair (u, v).
    """
    i1, i2, i3, i4 = order[0], order[1], order[2], order[3]
    w1, w2, p, q = w[i1], w[i2], w[i3], w[i4]
    s = p * p + q * q
    ell = w1 * w1 + w2 * w2 + s
    c2 = w2 * w2 + s
    N = n * n
    if c2 == 0:
        return _single_weight(m, w1, N, order, natural, out)
    disc1 = np.float64(N) * N * w1 * w1 - np.float64(ell) * (np.float64(N) * N - np.float64(c2) * m)
    if disc1 < 0:
        return False
    r1 = math.sqrt(disc1)
    lo1 = np.int64(math.floor((N * w1 - r1) / ell)) - 1
    hi1 = np.int64(math.ceil((N * w1 + r1) / ell)) + 1
    if natural and lo1 < 0:
        lo1 = 0
    for f1 in range(lo1, hi1 + 1):
        q0 = m - f1 * f1
        if q0 < 0:
            continue
        r0 = N - w1 * f1
        disc2 = np.float64(s) * (np.float64(c2) * q0 - np.float64(r0) * r0)
        if disc2 < 0:
            continue
        r2 = math.sqrt(disc2)
        lo2 = np.int64(math.floor((r0 * w2 - r2) / c2)) - 1
        hi2 = np.int64(math.ceil((r0 * w2 + r2) / c2)) + 1
        if natural and lo2 < 0:
            lo2 = 0
        for f2 in range(lo2, hi2 + 1):
            Q = q0 - f2 * f2
            if Q < 0:
                continue
            R = r0 - w2 * f2
            W = s * Q - R * R
            if W < 0:
                continue
            root = _isqrt(W)
            if root * root != W:
                continue
            for sgn in (1, -1):
                if sgn == -1 and root == 0:
                    break
                wr = sgn * root
                un = p * R + q * wr
                vn = q * R - p * wr
                if un % s != 0 or vn % s != 0:
                    continue
                u = un // s
                v = vn // s
                if natural and (u < 0 or v < 0):
                    continue
                out[i1] = f1
                out[i2] = f2
                out[i3] = u
                out[i4] = v
                return True
    return False


@numba.njit(cache=True)
def solve_one(m, w, order, natural, out):
    """First hit scanning n downward from floor((N(w) m)^(1/4)); returns n or -1."""
    ell = w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]
    lm = ell * m
    n = _isqrt(_isqrt(lm))
    while n >= 0:
        if _three_square_ok(lm - n * n * n * n):
            if search_n(m, w, order, n, natural, out):
                return n
        n -= 1
    return -1


@numba.njit(cache=True)
def scan_range(lo, hi, w, order, natural, failures):
    """Check every m in [lo, hi); failing m go to ``failures``; returns their count."""
    out = np.zeros(4, dtype=np.int64)
    nfail = 0
    for m in range(lo, hi):
        if solve_one(m, w, order, natural, out) < 0:
            failures[nfail] = m
            nfail += 1
    return nfail
