"""Independent brute-force oracles used to check the package.

Everything here is deliberately written from first principles (plain
scans, trial division, naive ladders) and never calls into gausspseudo,
so that agreement between the two is meaningful.
"""

from math import gcd, isqrt


def brute_group(n):
    """All (a, b) with a^2 + b^2 = 1 mod n, by full quadratic scan."""
    return [(a, b) for a in range(n) for b in range(n) if (a * a + b * b) % n == 1 % n]


def gpow(a, b, e, n):
    """(a+bi)^e mod n, naive binary ladder."""
    ra, rb = 1 % n, 0
    while e:
        if e & 1:
            ra, rb = (ra * a - rb * b) % n, (ra * b + rb * a) % n
        e >>= 1
        if e:
            a, b = (a * a - b * b) % n, (2 * a * b) % n
    return ra, rb


def trial_division_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def trial_division_factorize(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _small_factor_multiset(n):
    fac = {}
    for p, k in trial_division_factorize(n):
        fac[p] = k
    return fac


def element_order(a, b, n, group_order):
    """Exact multiplicative order of a+bi in the norm-one group."""
    e = group_order
    for p in _small_factor_multiset(group_order):
        while e % p == 0 and gpow(a, b, e // p, n) == (1 % n, 0):
            e //= p
    return e


def brute_max_order(n):
    g = brute_group(n)
    m = len(g)
    return max(element_order(a, b, n, m) for a, b in g)


def composite_sieve(limit):
    """bytearray marking composites below limit (index = n)."""
    flags = bytearray(limit)
    for i in range(2, isqrt(limit - 1) + 1):
        for j in range(i * i, limit, i):
            flags[j] = 1
    return flags


def primes_below(limit):
    flags = composite_sieve(limit)
    return [n for n in range(2, limit) if not flags[n]]


def naive_script_F(n):
    if n % 4 == 1:
        return n - 1
    if n % 4 == 3:
        return n + 1
    return n


def brute_giuga_member(n):
    """Direct summation of z^F over the full group scan."""
    F = naive_script_F(n)
    sr = si = 0
    for a, b in brute_group(n):
        ra, rb = gpow(a, b, F, n)
        sr += ra
        si += rb
    return (sr - F) % n == 0 and si % n == 0


def classical_phi_brute(n):
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def classical_lambda_brute(n):
    units = [a for a in range(1, n + 1) if gcd(a, n) == 1]
    e = 1
    while any(pow(a, e, n) != 1 % n for a in units):
        e += 1
    return e


def twin_pair_products_below(hi):
    """pq for twin primes q = p+2 with p = 3 mod 4 (equivalently 8 | p+q)."""
    out = []
    p = 3
    while p * (p + 2) < hi:
        if p % 4 == 3 and trial_division_is_prime(p) and trial_division_is_prime(p + 2):
            out.append(p * (p + 2))
        p += 2
    return out
