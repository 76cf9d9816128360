import random
from math import isqrt

import pytest
from hypothesis import given, strategies as st

from qs135.quaternion import ALPHA, InvariantViolation, enumerate_norm
from qs135.solution import MAX_M, Solution
from qs135.solver import (
    KINDS,
    BetaSolution,
    NoSolutionError,
    alpha_exit,
    apply_transformation,
    candidate_ns,
    cascade,
    forced_weights,
    generic_successor,
    guaranteed_parity,
    is_conforming,
    natural_window,
    solve_135_integer,
    solve_135_natural,
    solve_weighted,
    solve_with_n,
    transformation_step,
    KIND_IDENTITY,
)
from qs135.squares import is_three_square_representable, p4_partition_count
from qs135.verifier import oracle_solve


def beta_solutions(bound=10**4):
    coord = st.integers(-bound, bound)

    def build(x, y, z, n):
        x += (n * n - x - 3 * y - 3 * z) % 4
        return BetaSolution(x, y, z, (n * n - x - 3 * y - 3 * z) // 4, n)

    return st.builds(build, coord, coord, coord, st.integers(0, 200))


@given(beta_solutions())
def test_beta_abc_identity(b):
    assert b.is_valid()
    assert b.A**2 + b.B**2 + b.C**2 == 35 * b.m - b.n**4
    assert b.swapped().is_valid() and b.swapped().m == b.m


@given(beta_solutions(), st.sampled_from(KINDS))
def test_successor_invariants(b, kind):
    nxt = apply_transformation(b, kind)
    if nxt is None:
        assert transformation_step(b, kind) is None
        return
    assert nxt.m == b.m and nxt.n == b.n and nxt.is_valid()


@given(beta_solutions(), st.sampled_from(KINDS[2:]))
def test_closed_form_matches_transfer(b, kind):
    closed = apply_transformation(b, kind)
    generic = generic_successor(b, KIND_IDENTITY[kind])
    assert (closed is None) is (generic is None)
    if closed is not None:
        assert closed in (generic, generic.swapped())


def test_transformation_fixed_points():
    b = BetaSolution(3, 1, 1, 0, 3)
    assert transformation_step(b, "M7-4A").shift == 1
    assert apply_transformation(b, "M7-4A") == b
    assert transformation_step(b, "M5-A").shift == 0
    assert apply_transformation(b, "M5-A") == b


def test_transformation_inapplicable():
    b = BetaSolution(3, 0, 0, 0, 0)  # x - 2y - z + 2t = 3
    assert apply_transformation(b, "M5-A") is None
    with pytest.raises(ValueError):
        transformation_step(b, "bogus")


def test_cascade_mod_three_exit():
    b = BetaSolution(1, 0, 1, 3, 4)
    assert b.m == 11 and b.is_valid()
    sol = cascade(b)
    assert sol.coords == (1, 0, 3, 1) and sol.n == 4
    assert sol.is_valid(11)


def test_cascade_stall():
    b = BetaSolution(3, 1, 1, 0, 3)
    assert b.is_valid() and b.m == 11
    assert alpha_exit(b) is None
    assert cascade(b) is None


def test_cascade_exit_when_a_divisible_by_five():
    rng = random.Random(3)
    hits = 0
    while hits < 50:
        x, y, z = (rng.randint(-300, 300) for _ in range(3))
        n = rng.randint(0, 60)
        rest = n * n - x - 3 * y - 3 * z
        if rest % 4:
            continue
        b = BetaSolution(x, y, z, rest // 4, n)
        if b.A % 5:
            continue
        sol = alpha_exit(b)
        assert sol is not None and sol.is_valid(b.m)
        hits += 1


@pytest.mark.parametrize(
    "m, first, excluded",
    [(6, 1, None), (4, 3, None), (11, 1, 3)],
)
def test_candidate_examples(m, first, excluded):
    ns = candidate_ns(m).ns
    assert ns[0] == first
    if excluded is not None:
        assert excluded not in ns


@given(st.integers(1, 10**9))
def test_candidates_are_admissible(m):
    window = candidate_ns(m, "descending")
    assert window.ns == sorted(window.ns, reverse=True)
    for c in window.candidates:
        assert c.n**4 <= 35 * m
        assert is_three_square_representable(35 * m - c.n**4)
        assert c.conforming and is_conforming(m, c.n)
        assert c.odd is bool(c.n % 2)


def test_candidate_window_and_order():
    assert candidate_ns(1000, window=range(5, 9)).ns == [n for n in candidate_ns(1000).ns if 5 <= n <= 8]
    with pytest.raises(ValueError):
        candidate_ns(0)
    with pytest.raises(ValueError):
        candidate_ns(5, "sideways")


@pytest.mark.parametrize(
    "m, residue, parity", [(1, 1, 0), (3, 3, 0), (7, 7, 0), (2, 2, 1), (4, 4, 1), (5, 5, 1), (6, 6, 1), (8, 8, 0), (16, 0, None)]
)
def test_guaranteed_parity(m, residue, parity):
    assert m % 8 == residue % 8
    assert guaranteed_parity(m) == parity


@given(st.integers(1, 10**8).filter(lambda m: m % 16))
def test_parity_class_in_t_m(m):
    parity = guaranteed_parity(m)
    top = isqrt(isqrt(35 * m))
    for n in range(parity, top + 1, 2):
        assert is_three_square_representable(35 * m - n**4)


@pytest.mark.parametrize("m", [1, 3, 7, 11, 48, 128, 2024, 99_991, 10**12 + 39, MAX_M])
def test_solve_integer_examples(m):
    sol = solve_135_integer(m)
    assert sol.is_valid(m) and sol.weights == ALPHA


def test_solve_integer_small_values():
    assert solve_135_integer(1).coords == (1, 0, 0, 0)
    assert solve_135_integer(48).coords == (-4, -4, 4, 0)
    assert solve_135_integer(48).route == "descent"


def test_solve_integer_range():
    for m in range(1, 3000):
        assert solve_135_integer(m).is_valid(m)


@pytest.mark.parametrize("m", [0, -5, MAX_M + 1])
def test_solve_rejects_out_of_range(m):
    with pytest.raises(ValueError):
        solve_135_integer(m)
    with pytest.raises(ValueError):
        solve_135_natural(m)


@given(st.integers(1, 10**6 // 16))
def test_descent(k):
    m = 16 * k
    base = solve_135_integer(k)
    scaled = base.scaled(4)
    assert scaled.is_valid(m)
    sol = solve_135_integer(m)
    assert sol.is_valid(m) and sol.n % 2 == 0


def test_steering_small_squares_outside_sixteen_multiples():
    for m in range(38, 3000):
        if m % 16 == 0:
            continue
        sol = solve_135_integer(m, ns=(1, 2, 3, 6))
        assert sol.is_valid(m) and sol.n in (1, 2, 3, 6)


def test_steering_can_fail_on_sixteen_multiples():
    # every 35*128 - n^4 with n in {1,2,3,6} is of the form 4^r(8s+7)
    assert all(not is_three_square_representable(35 * 128 - n**4) for n in (1, 2, 3, 6))
    with pytest.raises(NoSolutionError):
        solve_135_integer(128, ns=(1, 2, 3, 6))


def test_solve_with_n_stall_and_success():
    assert solve_with_n(11, 3) is None
    assert solve_with_n(11, 4).is_valid(11)
    assert solve_with_n(11, 99) is None


@pytest.mark.parametrize("m, coords, n", [(7, (1, 1, 1, 2), 3), (12, (0, 2, 2, 2), 4), (2, (1, 1, 0, 0), 2)])
def test_natural_examples(m, coords, n):
    sol = solve_135_natural(m)
    assert sol.is_valid(m) and sol.is_natural()
    assert oracle_solve(m, ALPHA, True) == Solution(*coords, n=n)


def test_natural_small_range_against_oracle():
    for m in range(1, 3000):
        sol = solve_135_natural(m)
        assert sol is not None and sol.is_valid(m) and sol.is_natural(), m


@pytest.mark.parametrize("m", [106_000_000_001, 150_000_000_003, 199_999_999_999])
def test_natural_window_large(m):
    sol = solve_135_natural(m)
    assert sol.is_valid(m) and sol.is_natural()
    assert sol.n in natural_window(m)


def test_natural_window_bounds():
    for m in (1, 10, 10**6, 10**11 + 7):
        w = natural_window(m)
        for n in w:
            assert 34 * m <= n**4 <= 35 * m
        assert (w.start - 1) ** 4 < 34 * m and (w.stop) ** 4 > 35 * m


@pytest.mark.parametrize("m, n, ell", [(1, 1, 3), (3, 1, 5), (4, 2, 4), (10, 2, 7), (50, 5, 23), (77, 3, 35)])
def test_solve_weighted(m, n, ell):
    weights, sol = solve_weighted(m, n, ell)
    assert min(weights) >= 0 and sum(w * w for w in weights) == ell
    assert sol.is_valid(m) and sol.n == n
    if p4_partition_count(ell) == 1:
        assert tuple(sorted(weights, reverse=True)) == forced_weights(ell)


def test_solve_weighted_examples():
    weights, sol = solve_weighted(1, 1, 3)
    assert sorted(weights) == [0, 1, 1, 1]
    weights, sol = solve_weighted(3, 1, 5)
    assert sorted(weights) == [0, 0, 1, 2]


def test_solve_weighted_preconditions():
    with pytest.raises(ValueError):
        solve_weighted(3, 2, 5)  # 15 - 16 < 0
    with pytest.raises(ValueError):
        solve_weighted(1, 0, 7)  # 7 is not a sum of three squares


def test_forced_weights():
    assert forced_weights(3) == (1, 1, 1, 0)
    assert forced_weights(35) is None
    assert all(forced_weights(ell) is not None for ell in (1, 5, 7, 11, 15, 23, 6, 14))
    assert forced_weights(23) == tuple(sorted(map(abs, enumerate_norm(23)[0]), reverse=True))


def test_scaled_requires_square():
    sol = Solution(1, 0, 0, 0, 1)
    with pytest.raises(ValueError):
        sol.scaled(2)
    assert sol.scaled(16) == Solution(16, 0, 0, 0, 4)
    assert sol.record(1, "integer") == {
        "m": 1, "n": 1, "x": 1, "y": 0, "z": 0, "t": 0, "weights": [1, 3, 5, 0], "mode": "integer"
    }


def test_invariant_violation_is_runtime_error():
    assert issubclass(InvariantViolation, RuntimeError)
