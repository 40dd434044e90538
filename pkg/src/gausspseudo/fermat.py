"""Classical and Gaussian Fermat compositeness tests and pseudoprime predicates.

The Gaussian test exists in two provably equivalent forms:

* ratio form:  (z/conj(z)) ** F(n) = 1 in Z[i]/nZ[i]
* imaginary form:  Im(z ** F(n)) = 0 mod n

where F(n) is n-1, n+1 or n according to n mod 4.  Both are implemented
with separate code paths (the imaginary form keeps its own exponentiation
ladder) so that their agreement is a genuine cross-check and not a
tautology.  A base z with gcd(n, z*conj(z)) > 1 yields INVALID_BASE,
which says nothing about n either way.
"""

from __future__ import annotations

from enum import Enum
from math import gcd

from .arith import MAX_ARG, is_prime, script_F
from .residues import GaussianBase, InvalidBase, unit_ratio


class TestOutcome(Enum):
    __test__ = False  # not a pytest class

    PASS = "pass"
    FAIL = "fail"
    INVALID_BASE = "invalid_base"


# The ten Gaussian bases used for the joint census table.
TABLE_GAUSSIAN_BASES: tuple[GaussianBase, ...] = tuple(
    GaussianBase(a, b)
    for a, b in [
        (1, 2), (1, 4), (1, 6), (1, 10), (2, 5),
        (2, 7), (3, 8), (3, 10), (4, 5), (4, 9),
    ]
)

TABLE_INTEGER_BASES: tuple[int, ...] = tuple(range(2, 12))

# Fixed panel for property checks: the census bases plus the degenerate
# base 1+1i (whose unit ratio is i) and the mirror 2+1i of 1+2i.
BASE_PANEL: tuple[GaussianBase, ...] = TABLE_GAUSSIAN_BASES + (
    GaussianBase(1, 1),
    GaussianBase(2, 1),
)

# Wider 20-base panel for the form-equivalence property.
EQUIVALENCE_PANEL: tuple[GaussianBase, ...] = BASE_PANEL + tuple(
    GaussianBase(a, b)
    for a, b in [(5, 2), (2, 3), (6, 1), (10, 3), (4, 1), (1, 8), (7, 2), (3, 4)]
)


def _check_candidate(n: int) -> None:
    if not 2 <= n < MAX_ARG:
        raise ValueError(f"candidate must satisfy 2 <= n < 2**63, got {n}")


def gaussian_fermat_ratio_test(n: int, z: GaussianBase) -> TestOutcome:
    """Pass iff (z/conj(z)) ** F(n) = 1 mod n; primes never fail."""
    _check_candidate(n)
    try:
        ratio = unit_ratio(z, n)
    except InvalidBase:
        return TestOutcome.INVALID_BASE
    power = ratio ** script_F(n)
    return TestOutcome.PASS if power.is_one() else TestOutcome.FAIL


def gaussian_fermat_im_test(n: int, z: GaussianBase) -> TestOutcome:
    """Pass iff Im(z ** F(n)) = 0 mod n; independent of the ratio form."""
    _check_candidate(n)
    if gcd(n, z.norm()) != 1:
        return TestOutcome.INVALID_BASE
    a, b = z.re % n, z.im % n
    e = script_F(n)
    # dedicated ladder: deliberately does not share code with the ratio form
    ra, rb = 1 % n, 0
    while e:
        if e & 1:
            ra, rb = (ra * a - rb * b) % n, (ra * b + rb * a) % n
        e >>= 1
        if e:
            a, b = (a * a - b * b) % n, (2 * a * b) % n
    return TestOutcome.PASS if rb == 0 else TestOutcome.FAIL


def is_gfp(n: int, z: GaussianBase) -> bool:
    """Gaussian Fermat pseudoprime: composite, valid base, and the test passes."""
    _check_candidate(n)
    if is_prime(n):
        return False
    return gaussian_fermat_ratio_test(n, z) is TestOutcome.PASS


def classical_fermat_test(n: int, a: int) -> TestOutcome:
    """Pass iff a**(n-1) = 1 mod n; gcd(a, n) > 1 yields INVALID_BASE."""
    _check_candidate(n)
    if a < 2:
        raise ValueError(f"integer base must be >= 2, got {a}")
    if gcd(a, n) != 1:
        return TestOutcome.INVALID_BASE
    return TestOutcome.PASS if pow(a, n - 1, n) == 1 else TestOutcome.FAIL


def is_fermat_psp(n: int, a: int) -> bool:
    """Classical Fermat pseudoprime to base a (composite n only)."""
    _check_candidate(n)
    if is_prime(n):
        return False
    return classical_fermat_test(n, a) is TestOutcome.PASS
