"""Number-class predicates built on the norm-one group.

Covers the Gaussian analogues of Carmichael numbers (two equivalent
routes), cyclic numbers, Lehmer's totient condition and the Giuga-style
power-sum set, plus the classical Carmichael/cyclic predicates, Williams
numbers, and an aggregate report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .arith import (
    MAX_ARG,
    _gauss_lambda_pp,
    _gauss_phi_pp,
    classical_phi_from_factors,
    factorize,
    gaussian_lambda_from_factors,
    gaussian_phi_from_factors,
    is_prime,
    script_F,
)
from .residues import _group_elements_prime_power, _pow_components

DEFAULT_GIUGA_CAP = 100_000


class ConsistencyError(RuntimeError):
    """Two provably equivalent computations disagreed: an implementation bug."""


def _check_n(n: int) -> None:
    if not 2 <= n < MAX_ARG:
        raise ValueError(f"argument must satisfy 2 <= n < 2**63, got {n}")


def _is_prime_power(factors) -> bool:
    return len(factors) == 1


# ---------------------------------------------------------------------------
# Korselt-style predicates
# ---------------------------------------------------------------------------

def g_carmichael_witness(n: int) -> tuple[bool, dict]:
    """Korselt-style route with evidence: (verdict, witness dict).

    Composite n qualifies iff F(p) | F(n) for every prime p | n, and n is
    either odd square-free, or a multiple of 4 with n/4 in {2, 3, 5} or
    composite.  On failure the witness records the first violation.
    """
    _check_n(n)
    fac = factorize(n)
    if _is_prime_power(fac.factors) and fac.factors[0][1] == 1:
        return False, {"prime": n}
    F = script_F(n)
    for p, _ in fac.factors:
        if F % script_F(p) != 0:
            return False, {"f_divisibility_violation": p}
    if n % 2 == 1:
        for p, k in fac.factors:
            if k > 1:
                return False, {"square_factor": p}
        return True, {}
    if n % 4 != 0:
        return False, {"even_not_multiple_of_4": n}
    q = n // 4
    if q in (2, 3, 5) or not is_prime(q):
        return True, {}
    return False, {"quarter_is_prime": q}


def is_g_carmichael(n: int) -> bool:
    """Composite n that passes the Gaussian test for every valid base."""
    return g_carmichael_witness(n)[0]


def is_g_carmichael_via_lambda(n: int) -> bool:
    """Equivalent route: composite and group exponent divides F(n)."""
    _check_n(n)
    fac = factorize(n)
    if _is_prime_power(fac.factors) and fac.factors[0][1] == 1:
        return False
    return script_F(n) % gaussian_lambda_from_factors(fac.factors) == 0


def _g_carmichael_from_factors(n: int, factors) -> bool:
    if len(factors) == 1 and factors[0][1] == 1:
        return False
    return script_F(n) % gaussian_lambda_from_factors(factors) == 0


def carmichael_witness(n: int) -> tuple[bool, dict]:
    """Korselt's criterion with evidence: odd square-free composite, p-1 | n-1."""
    _check_n(n)
    if n % 2 == 0:
        return False, {"even": n}
    fac = factorize(n)
    if _is_prime_power(fac.factors) and fac.factors[0][1] == 1:
        return False, {"prime": n}
    for p, k in fac.factors:
        if k > 1:
            return False, {"square_factor": p}
    for p, _ in fac.factors:
        if (n - 1) % (p - 1) != 0:
            return False, {"korselt_violation": p}
    return True, {}


def is_carmichael(n: int) -> bool:
    return carmichael_witness(n)[0]


def _carmichael_from_factors(n: int, factors) -> bool:
    if n % 2 == 0 or (len(factors) == 1 and factors[0][1] == 1):
        return False
    return all(k == 1 for _, k in factors) and all(
        (n - 1) % (p - 1) == 0 for p, _ in factors
    )


# ---------------------------------------------------------------------------
# Cyclic and Lehmer-style predicates
# ---------------------------------------------------------------------------

def is_g_cyclic(n: int) -> bool:
    """gcd(gaussian_phi(n), n) = 1."""
    _check_n(n)
    return gcd(gaussian_phi_from_factors(factorize(n).factors), n) == 1


def is_cyclic_number(n: int) -> bool:
    """gcd(phi(n), n) = 1 (every group of such order is cyclic)."""
    _check_n(n)
    return gcd(classical_phi_from_factors(factorize(n).factors), n) == 1


def is_g_lehmer(n: int) -> bool:
    """Composite n with gaussian_phi(n) dividing F(n)."""
    _check_n(n)
    fac = factorize(n)
    if _is_prime_power(fac.factors) and fac.factors[0][1] == 1:
        return False
    return script_F(n) % gaussian_phi_from_factors(fac.factors) == 0


def _g_lehmer_from_factors(n: int, factors) -> bool:
    if len(factors) == 1 and factors[0][1] == 1:
        return False
    return script_F(n) % gaussian_phi_from_factors(factors) == 0


def phi_power_congruence(n: int) -> bool:
    """gaussian_phi(n) ** gaussian_phi(n) = 1 mod n."""
    _check_n(n)
    P = gaussian_phi_from_factors(factorize(n).factors)
    return pow(P % n, P, n) == 1 % n


def lambda_power_congruence(n: int) -> bool:
    """gaussian_lambda(n) ** gaussian_lambda(n) = 1 mod n."""
    _check_n(n)
    L = gaussian_lambda_from_factors(factorize(n).factors)
    return pow(L % n, L, n) == 1 % n


# ---------------------------------------------------------------------------
# Giuga-style power sums
# ---------------------------------------------------------------------------

def _giuga_sum_prime_power(p: int, k: int, F: int) -> tuple[int, int]:
    """Sum of z**F over the norm-one group mod p^k, as (re, im) mod p^k.

    For odd p the group is cyclic of order m = phi(p^k); z -> z**F maps it
    onto its unique subgroup of order e = m / gcd(m, F), each image element
    hit m/e times.  The subgroup of order e factors into a p-part and a
    part of order e' coprime to p; the coprime part consists of the e'
    distinct roots of x**e' - 1, which sum to 0 when e' > 1, while the
    p-part sums to its own size.  Hence the total is phi(p^k) when e is a
    p-power and 0 otherwise.  For p = 2 the exponent divides F in every
    case this package reaches (F is even whenever n is), giving the same
    closed form; a direct enumeration covers the remaining corner.
    """
    m = _gauss_phi_pp(p, k)
    pk = p**k
    if p == 2:
        if F % _gauss_lambda_pp(p, k) == 0:
            return m % pk, 0
        sr = si = 0
        for a, b in _group_elements_prime_power(p, k):
            ra, rb = _pow_components(a, b, F, pk)
            sr += ra
            si += rb
        return sr % pk, si % pk
    e = m // gcd(m, F)
    while e % p == 0:
        e //= p
    return (m % pk, 0) if e == 1 else (0, 0)


def giuga_membership(n: int, cap: int = DEFAULT_GIUGA_CAP) -> bool:
    """Whether the sum of z**F(n) over the norm-one group equals F(n) mod n.

    Both components of the sum must match (real part F(n), imaginary 0).
    Evaluated prime power by prime power and recombined through the CRT,
    so the cost is polylogarithmic instead of one exponentiation per
    group element.
    """
    _check_n(n)
    if n > cap:
        raise ValueError(f"giuga cap exceeded: {n} > {cap}")
    fac = factorize(n)
    return _giuga_from_factors(n, fac.factors)


def _giuga_from_factors(n: int, factors) -> bool:
    F = script_F(n)
    phis = [_gauss_phi_pp(p, k) for p, k in factors]
    total = 1
    for x in phis:
        total *= x
    for (p, k), m in zip(factors, phis):
        pk = p**k
        sre, sim = _giuga_sum_prime_power(p, k, F)
        other = (total // m) % pk
        if (other * sre - F) % pk != 0 or (other * sim) % pk != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Williams numbers and the combined 4k+3 check
# ---------------------------------------------------------------------------

def is_r_williams(n: int, r: int) -> bool:
    """Square-free composite n with (p+r) | (n+r) and (p-r) | (n-r) for all p | n.

    Square-freeness follows the usual definition of Korselt/Williams
    numbers; without it, odd prime powers such as 27 would slip in and
    break the equivalence with the Carmichael-type predicates.
    """
    _check_n(n)
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    fac = factorize(n)
    if _is_prime_power(fac.factors) and fac.factors[0][1] == 1:
        return False
    if not fac.is_squarefree:
        return False
    return _williams_divisibilities(n, fac.primes, r)


def _williams_divisibilities(n: int, primes, r: int) -> bool:
    for p in primes:
        if (n + r) % (p + r) != 0:
            return False
        d = p - r
        if d == 0 or (n - r) % abs(d) != 0:
            return False
    return True


def _r_williams_from_factors(n: int, factors, r: int) -> bool:
    if len(factors) == 1 and factors[0][1] == 1:
        return False
    if any(k > 1 for _, k in factors):
        return False
    return _williams_divisibilities(n, [p for p, _ in factors], r)


def carmichael_and_g_carmichael_3mod4(n: int) -> bool:
    """For n = 3 mod 4: Carmichael and G-Carmichael simultaneously.

    Computed twice: directly, and through the equivalent condition
    "1-Williams with every prime factor = 3 mod 4".  A disagreement means
    an implementation bug and raises ConsistencyError.
    """
    _check_n(n)
    if n % 4 != 3:
        raise ValueError(f"argument must be 3 mod 4, got {n}")
    fac = factorize(n)
    direct = _carmichael_from_factors(n, fac.factors) and _g_carmichael_from_factors(
        n, fac.factors
    )
    via_williams = _r_williams_from_factors(n, fac.factors, 1) and all(
        p % 4 == 3 for p in fac.primes
    )
    if direct != via_williams:
        raise ConsistencyError(
            f"n={n}: carmichael&g_carmichael={direct} but williams route={via_williams}"
        )
    return direct


# ---------------------------------------------------------------------------
# Aggregate report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationReport:
    n: int
    is_prime: bool
    g_carmichael: bool
    carmichael: bool
    g_cyclic: bool
    cyclic: bool
    g_lehmer: bool
    phi_power_congruence: bool
    lambda_power_congruence: bool
    williams_1: bool
    giuga_member: bool | None = None
    witnesses: dict = field(default_factory=dict)

    FLAG_ORDER = (
        "g_carmichael",
        "carmichael",
        "g_cyclic",
        "cyclic",
        "g_lehmer",
        "phi_power_congruence",
        "lambda_power_congruence",
        "williams_1",
        "giuga_member",
    )


def classify(
    n: int, *, with_giuga: bool = False, giuga_cap: int = DEFAULT_GIUGA_CAP
) -> ClassificationReport:
    """Evaluate every predicate at n; the Giuga sum only when requested.

    The report enforces the structural implications by construction:
    g_lehmer is derived from g_carmichael (Lehmer implies Carmichael here)
    and the power congruences are combined with g_cyclic.
    """
    _check_n(n)
    fac = factorize(n)
    factors = fac.factors
    prime = _is_prime_power(factors) and factors[0][1] == 1

    g_carm, witness = g_carmichael_witness(n)
    if g_carm != _g_carmichael_from_factors(n, factors):
        raise ConsistencyError(f"g_carmichael routes disagree at {n}")
    carm, c_witness = carmichael_witness(n)
    witnesses = dict(witness)
    for key, val in c_witness.items():
        witnesses.setdefault(key, val)

    F = script_F(n)
    P = gaussian_phi_from_factors(factors)
    L = gaussian_lambda_from_factors(factors)
    g_cyc = gcd(P, n) == 1
    g_lehmer = g_carm and F % P == 0
    phi_cong = g_cyc and pow(P % n, P, n) == 1 % n
    lambda_cong = g_cyc and pow(L % n, L, n) == 1 % n

    giuga = None
    if with_giuga:
        if n > giuga_cap:
            raise ValueError(f"giuga cap exceeded: {n} > {giuga_cap}")
        giuga = _giuga_from_factors(n, factors)

    return ClassificationReport(
        n=n,
        is_prime=prime,
        g_carmichael=g_carm,
        carmichael=carm,
        g_cyclic=g_cyc,
        cyclic=gcd(classical_phi_from_factors(factors), n) == 1,
        g_lehmer=g_lehmer,
        phi_power_congruence=phi_cong,
        lambda_power_congruence=lambda_cong,
        williams_1=_r_williams_from_factors(n, factors, 1),
        giuga_member=giuga,
        witnesses=witnesses,
    )
