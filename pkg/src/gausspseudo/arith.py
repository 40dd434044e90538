"""Integer plumbing and the arithmetic functions of the norm-one group.

Provides deterministic 64-bit primality testing, reproducible
factorization (trial division + Brent's cycle variant of Pollard rho
with a fixed parameter sequence), the group-size function gaussian_phi,
the group-exponent function gaussian_lambda, their classical
counterparts, and the cyclic decomposition of the group at prime powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce as _reduce
from math import gcd, isqrt, lcm, prod

MAX_ARG = 1 << 63

# Strong-pseudoprime witnesses covering every n < 3.3 * 10**24 (Sinclair's
# seven-base set), hence deterministic over the whole 64-bit domain.
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_DIVISION_BOUND = 1_000_000


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 2**64."""
    if n >= 1 << 64:
        raise ValueError(f"primality test limited to n < 2**64, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Complete prime factorization of n, primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if prod(p**k for p, k in self.factors) != self.n:
            raise ValueError(f"factors {self.factors} do not multiply to {self.n}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("primes must be strictly increasing")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(k == 1 for _, k in self.factors)


def _brent_rho(n: int, c: int) -> int:
    """One Brent-rho round with x^2+c; returns a divisor (possibly n)."""
    x, m = 2, 128
    y, r, q = x, 1, 1
    g = 1
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g


def _rho_factor(n: int) -> int:
    """A nontrivial divisor of composite odd n; deterministic c sequence."""
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        d = _brent_rho(n, c)
        if d not in (1, n):
            return d
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable in practice


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Factor 2 <= n < 2**63 into prime powers."""
    if not 2 <= n < MAX_ARG:
        raise ValueError(f"factorization domain is 2 <= n < 2**63, got {n}")
    original = n
    counts: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    if n > 1 and is_prime(n):
        counts[n] = counts.get(n, 0) + 1
        n = 1
    # wheel over numbers coprime to 30
    d = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < _TRIAL_DIVISION_BOUND:
        if n % d == 0:
            while n % d == 0:
                counts[d] = counts.get(d, 0) + 1
                n //= d
            if n > 1 and is_prime(n):
                counts[n] = counts.get(n, 0) + 1
                n = 1
                break
        d += increments[i]
        i = (i + 1) & 7
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                counts[m] = counts.get(m, 0) + 1
                continue
            root = isqrt(m)
            if root * root == m:
                stack += [root, root]
                continue
            d = _rho_factor(m)
            stack += [d, m // d]
    factors = tuple(sorted(counts.items()))
    return Factorization(original, factors)


def beta(p: int) -> int:
    """The quadratic character of -1 at p: 0 at 2, +1 if p=1 mod 4, -1 if p=3 mod 4."""
    if not is_prime(p):
        raise ValueError(f"beta is defined on primes only, got {p}")
    if p == 2:
        return 0
    return 1 if p % 4 == 1 else -1


def script_F(n: int) -> int:
    """n-1, n+1 or n according to n mod 4 being 1, 3 or even.

    Plays the role of n-1 in the classical Fermat test; equals the group
    size when n is prime.  By convention script_F(1) = 0.
    """
    if not 1 <= n < MAX_ARG:
        raise ValueError(f"argument must satisfy 1 <= n < 2**63, got {n}")
    r = n % 4
    if r == 1:
        return n - 1
    if r == 3:
        return n + 1
    return n


def _gauss_phi_pp(p: int, k: int) -> int:
    if p == 2:
        return 2 if k == 1 else 2 ** (k + 1)
    return p ** (k - 1) * (p - 1) if p % 4 == 1 else p ** (k - 1) * (p + 1)


def _gauss_lambda_pp(p: int, k: int) -> int:
    if p == 2:
        if k == 1:
            return 2
        return 4 if k <= 4 else 2 ** (k - 2)
    return _gauss_phi_pp(p, k)


def _classical_phi_pp(p: int, k: int) -> int:
    return p ** (k - 1) * (p - 1)


def _classical_lambda_pp(p: int, k: int) -> int:
    if p == 2:
        return 1 if k == 1 else (2 if k == 2 else 2 ** (k - 2))
    return _classical_phi_pp(p, k)


def gaussian_phi_from_factors(factors) -> int:
    return prod(_gauss_phi_pp(p, k) for p, k in factors)


def gaussian_lambda_from_factors(factors) -> int:
    return _reduce(lcm, (_gauss_lambda_pp(p, k) for p, k in factors), 1)


def classical_phi_from_factors(factors) -> int:
    return prod(_classical_phi_pp(p, k) for p, k in factors)


def classical_lambda_from_factors(factors) -> int:
    return _reduce(lcm, (_classical_lambda_pp(p, k) for p, k in factors), 1)


def gaussian_phi(n: int) -> int:
    """Order of the norm-one group mod n; gaussian_phi(1) = 1 by convention."""
    if n == 1:
        return 1
    return gaussian_phi_from_factors(factorize(n).factors)


def gaussian_lambda(n: int) -> int:
    """Exponent of the norm-one group mod n; gaussian_lambda(1) = 1."""
    if n == 1:
        return 1
    return gaussian_lambda_from_factors(factorize(n).factors)


def classical_phi(n: int) -> int:
    """Euler's totient."""
    if n == 1:
        return 1
    return classical_phi_from_factors(factorize(n).factors)


def classical_lambda(n: int) -> int:
    """Carmichael's lambda."""
    if n == 1:
        return 1
    return classical_lambda_from_factors(factorize(n).factors)


@dataclass(frozen=True)
class GroupDescriptor:
    """Cyclic decomposition of the norm-one group mod n."""

    cyclic_orders: tuple[int, ...]
    order: int
    exponent: int

    def __post_init__(self) -> None:
        if prod(self.cyclic_orders) != self.order:
            raise ValueError("product of cyclic orders must equal the order")
        if _reduce(lcm, self.cyclic_orders, 1) != self.exponent:
            raise ValueError("lcm of cyclic orders must equal the exponent")


def _cyclic_orders_pp(p: int, k: int) -> tuple[int, ...]:
    if p == 2:
        return (2,) if k == 1 else (2 ** (k - 2), 2, 4)
    return (p ** (k - 1), p - 1) if p % 4 == 1 else (p ** (k - 1), p + 1)


def group_structure(n: int) -> GroupDescriptor:
    """Cyclic factors of the norm-one group, prime-power blocks in prime order."""
    if n == 1:
        return GroupDescriptor((), 1, 1)
    orders: list[int] = []
    for p, k in factorize(n).factors:
        orders.extend(_cyclic_orders_pp(p, k))
    orders_t = tuple(orders)
    return GroupDescriptor(
        orders_t, prod(orders_t), _reduce(lcm, orders_t, 1)
    )


def smallest_prime_factor_sieve(limit: int) -> list[int]:
    """spf[i] = least prime factor of i for 0 <= i < limit (0 for i < 2)."""
    spf = list(range(limit))
    if limit > 1:
        spf[1] = 0
    for i in range(2, isqrt(limit - 1) + 1):
        if spf[i] == i:
            for j in range(i * i, limit, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def factors_from_spf(n: int, spf: list[int]) -> tuple[tuple[int, int], ...]:
    """Factor n using a precomputed smallest-prime-factor table."""
    out = []
    while n > 1:
        p = spf[n]
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out.append((p, k))
    return tuple(out)
