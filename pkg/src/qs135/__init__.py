"""Sums of four squares with x + 3y + 5z a perfect square, via Lipschitz quaternions."""

from .quaternion import (
    ALPHA,
    BETA,
    ConfigurationError,
    InvariantViolation,
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
)
from .solution import MAX_M, Solution
from .solver import (
    BetaSolution,
    NoSolutionError,
    apply_transformation,
    candidate_ns,
    cascade,
    solve_135_integer,
    solve_135_natural,
    solve_weighted,
)
from .squares import (
    ThreeSquares,
    is_perfect_square,
    is_three_square_representable,
    p4_partition_count,
    three_square_decompositions,
)
from .transfer import (
    IDENTITIES,
    Class35,
    TransferIdentity,
    classify35,
    normalize_to,
    rank_one_profile,
    right_divisors_of_norm,
    transfer,
)
from .verifier import VerifyReport, find_exceptions, oracle_solve, verify_range

__version__ = "0.1.0"
