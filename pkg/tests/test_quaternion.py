import pytest
from hypothesis import given, strategies as st

from qs135.quaternion import (
    ALPHA,
    BETA,
    I,
    J,
    K,
    ONE,
    UNITS,
    ConfigurationError,
    Quat,
    SignedPerm,
    conj,
    dot,
    enumerate_norm,
    exact_right_quotient,
    find_signed_perm,
    is_primitive,
    mul,
    norm,
    orbit,
    signed_perms,
)

from conftest import quats, small_quats

perms = st.sampled_from(signed_perms())


def q(text):
    return Quat.parse(text)


@pytest.mark.parametrize(
    "p, r, expected",
    [
        ("i", "j", "k"),
        ("j", "k", "i"),
        ("k", "i", "j"),
        ("j", "i", "-k"),
        ("i", "i", "-1"),
        ("1+3i+3j+4k", "1+i-j", "1+8i+6j-2k"),
        ("1+i+j", "5+3i+j", "1+8i+6j-2k"),
        ("1+3i+3j+4k", "1-2j", "7+11i+j-2k"),
        ("-1+2i", "3-5i-j", "7+11i+j-2k"),
    ],
)
def test_mul_examples(p, r, expected):
    assert mul(q(p), q(r)) == q(expected)


def test_ijk_is_minus_one():
    assert mul(mul(I, J), K) == -ONE
    assert mul(I, J) != mul(J, I)


@given(quats, quats)
def test_norm_is_multiplicative(p, r):
    assert norm(mul(p, r)) == norm(p) * norm(r)


@given(small_quats, small_quats, small_quats)
def test_mul_associative(p, r, s):
    assert mul(mul(p, r), s) == mul(p, mul(r, s))


@given(quats)
def test_conj_properties(x):
    assert conj(conj(x)) == x
    assert mul(x, conj(x)) == Quat(norm(x), 0, 0, 0)
    assert dot(x, x) == norm(x)


@given(quats, quats)
def test_dot_is_real_part(p, r):
    assert dot(p, r) == dot(r, p) == mul(conj(p), r).a


@pytest.mark.parametrize(
    "x, expected", [(ALPHA, Quat(1, -3, -5, 0)), (Quat(7, 0, 0, 0), Quat(7, 0, 0, 0))]
)
def test_conj_examples(x, expected):
    assert conj(x) == expected


@pytest.mark.parametrize("x, n", [(ALPHA, 35), (BETA, 35), (Quat(0, 0, 0, 0), 0)])
def test_norm_examples(x, n):
    assert norm(x) == n


def test_dot_examples():
    assert dot(ALPHA, ALPHA) == 35
    assert dot(ONE, I) == 0
    assert mul(q("3-j-k"), q("5+3i+j")).a == 16


@pytest.mark.parametrize(
    "delta, zeta, expected",
    [("1+8i+6j-2k", "5+3i+j", "1+i+j"), ("1+3i+3j+4k", "1+3i+3j+4k", "1"), ("1+3i+3j+4k", "1+2i", None)],
)
def test_exact_right_quotient(delta, zeta, expected):
    got = exact_right_quotient(q(delta), q(zeta))
    assert got == (None if expected is None else q(expected))


@given(small_quats, small_quats)
def test_quotient_soundness(g, z):
    if norm(z) == 0:
        return
    assert exact_right_quotient(mul(g, z), z) == g
    got = exact_right_quotient(g, z)
    if got is not None:
        assert mul(got, z) == g


def test_enumerate_norm_counts():
    assert enumerate_norm(1) == sorted(UNITS)
    assert enumerate_norm(0) == [Quat(0, 0, 0, 0)]
    assert len(enumerate_norm(35)) == 384


def _jacobi_r4(n):
    return 8 * sum(d for d in range(1, n + 1) if n % d == 0 and d % 4)


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 12, 35, 48, 99])
def test_enumerate_norm_matches_jacobi(ell):
    found = enumerate_norm(ell)
    assert len(found) == _jacobi_r4(ell)
    assert found == sorted(found)
    assert all(norm(x) == ell for x in found)


def test_enumerate_norm_cap():
    with pytest.raises(ConfigurationError):
        enumerate_norm(50, cap=10)


def test_signed_perm_group():
    group = signed_perms()
    assert len(set(group)) == 384
    assert group[0] == SignedPerm.identity()


@given(perms, perms, small_quats)
def test_signed_perm_compose_and_inverse(p1, p2, x):
    assert p1.compose(p2)(x) == p1(p2(x))
    assert p1.inverse()(p1(x)) == x
    assert p1.compose(p1.inverse()) == SignedPerm.identity()


@given(perms, small_quats)
def test_orbit_invariance(pi, x):
    assert norm(pi(x)) == norm(x)
    assert pi(x) in orbit(x)


def test_orbit_examples():
    assert len(orbit(ALPHA)) == 192
    assert orbit(Quat(0, 0, 0, 0)) == {Quat(0, 0, 0, 0)}
    assert q("3-5j+k") in orbit(ALPHA)
    assert all(384 % len(orbit(x)) == 0 for x in enumerate_norm(35))


def test_find_signed_perm():
    assert find_signed_perm(ALPHA, ALPHA) == SignedPerm.identity()
    assert find_signed_perm(ALPHA, BETA) is None
    target = q("-3+4i+j+3k")
    assert find_signed_perm(BETA, target)(BETA) == target


@given(perms, small_quats)
def test_find_signed_perm_is_minimal(pi, x):
    y = pi(x)
    found = find_signed_perm(x, y)
    assert found(x) == y
    assert found == min(s for s in signed_perms() if s(x) == y)


@pytest.mark.parametrize(
    "x, k, expected", [("2+2i+2j", 3, True), ("3+3i", 3, False), ("1+8i+6j-2k", 35, True), ("5+5k", 35, False)]
)
def test_is_primitive(x, k, expected):
    assert is_primitive(q(x), k) is expected


@pytest.mark.parametrize("text", ["1+3i-5j+k", "-i", "7", "-2-j", "0"])
def test_parse_str_round_trip(text):
    assert str(Quat.parse(text)) == text


def test_parse_csv_and_errors():
    assert Quat.parse("1,3,5,0") == ALPHA
    for bad in ("", "1,2", "2x"):
        with pytest.raises(ValueError):
            Quat.parse(bad)
