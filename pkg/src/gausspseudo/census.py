"""Parallel range searches: pseudoprime lists, classifier censuses, the
joint (Gaussian base x integer base) pseudoprime table, and verification
of externally published pseudoprime lists.

Ranges are split into fixed-size blocks scattered over worker processes;
block results are merged in block order, so output is byte-identical for
any worker count.  Primality inside a block comes from a segmented sieve
below 2**32 and deterministic Miller-Rabin above.  All kernels are pure;
a cancelled run simply never returns a partial result.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, lcm

from .arith import (
    MAX_ARG,
    _gauss_lambda_pp,
    _gauss_phi_pp,
    factorize,
    is_prime,
    script_F,
)
from .classify import (
    DEFAULT_GIUGA_CAP,
    _carmichael_from_factors,
    _g_carmichael_from_factors,
    _g_lehmer_from_factors,
    _giuga_from_factors,
    _r_williams_from_factors,
    carmichael_and_g_carmichael_3mod4,
)
from .fermat import TestOutcome, gaussian_fermat_ratio_test
from .residues import GaussianBase, _pow_components

log = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 1 << 20
_SIEVE_CUTOFF = 1 << 32
_FACTOR_BATCH = 1 << 16

CLASSIFIER_NAMES = (
    "g_carmichael",
    "carmichael",
    "g_cyclic",
    "g_lehmer",
    "congruence_exception",
    "giuga",
    "williams_1",
    "twin_pair_product",
)

# Gaussian bases, by ascending norm, used to prefilter Carmichael-type
# searches: a G-Carmichael number passes the test for every valid base,
# so failing any one of these proves the candidate out.
_PREFILTER_BASES = ((1, 2, 5), (1, 4, 17), (1, 6, 37), (1, 1, 2))


@dataclass(frozen=True)
class RangeQuery:
    """Half-open search range [lo, hi) with optional residue filter."""

    lo: int
    hi: int
    residue_filter: tuple[int, int] | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if not 2 <= self.lo < self.hi < MAX_ARG:
            raise ValueError(f"need 2 <= lo < hi < 2**63, got [{self.lo}, {self.hi})")
        if self.residue_filter is not None:
            m, r = self.residue_filter
            if not (m >= 1 and 0 <= r < m):
                raise ValueError(f"bad residue filter {self.residue_filter}")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class CensusTable:
    """Joint pseudoprime counts: rows are Gaussian bases, columns integer bases."""

    gaussian_bases: tuple[GaussianBase, ...]
    integer_bases: tuple[int, ...]
    counts: tuple[tuple[int, ...], ...]
    limit: int
    residue_filter: tuple[int, int] | None

    def __post_init__(self) -> None:
        if len(self.counts) != len(self.gaussian_bases) or any(
            len(row) != len(self.integer_bases) for row in self.counts
        ):
            raise ValueError("counts shape must match base lists")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of running the Gaussian test over an external candidate list."""

    source: str
    total_read: int
    filtered: int
    passing: tuple[int, ...]
    invalid_base: int
    malformed_lines: int


# ---------------------------------------------------------------------------
# Primality within blocks
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4)
def _base_primes(limit: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(range(i * i, limit + 1, i))
    return tuple(i for i in range(limit + 1) if sieve[i])


def _composite_flags(lo: int, hi: int) -> bytearray:
    """flags[n-lo] = 1 iff n is composite, for lo <= n < hi."""
    flags = bytearray(hi - lo)
    if hi <= _SIEVE_CUTOFF:
        for p in _base_primes(isqrt(hi - 1) + 1):
            start = max(p * p, (lo + p - 1) // p * p)
            if start < hi:
                flags[start - lo :: p] = b"\x01" * len(range(start, hi, p))
    else:
        for n in range(lo, hi):
            if not is_prime(n):
                flags[n - lo] = 1
    return flags


def _filtered_range(lo: int, hi: int, residue_filter):
    if residue_filter is None:
        return range(lo, hi)
    m, r = residue_filter
    return range(lo + (r - lo) % m, hi, m)


# ---------------------------------------------------------------------------
# Block scheduling
# ---------------------------------------------------------------------------

def _blocks(lo: int, hi: int, block_size: int):
    out = []
    b = lo
    while b < hi:
        out.append((b, min(b + block_size, hi)))
        b += block_size
    return out


def _run_blocks(kernel, tasks, workers: int, progress=None):
    """Run kernel over tasks, merging results in task order."""
    results = []
    if workers <= 1 or len(tasks) <= 1:
        for i, task in enumerate(tasks):
            results.append(kernel(task))
            if progress:
                progress(i + 1, len(tasks))
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            for i, res in enumerate(pool.map(kernel, tasks)):
                results.append(res)
                if progress:
                    progress(i + 1, len(tasks))
    return results


# ---------------------------------------------------------------------------
# Factor sieve for predicate scans that need every factorization
# ---------------------------------------------------------------------------

def _factor_batch(lo: int, hi: int):
    """Factorizations of every n in [lo, hi) by a batched division sieve."""
    size = hi - lo
    rem = list(range(lo, hi))
    factors = [[] for _ in range(size)]
    for p in _base_primes(isqrt(hi - 1) + 1):
        start = (lo + p - 1) // p * p
        for idx in range(start - lo, size, p):
            k = 0
            v = rem[idx]
            while v % p == 0:
                v //= p
                k += 1
            if k:
                rem[idx] = v
                factors[idx].append((p, k))
    for idx in range(size):
        if rem[idx] > 1:
            factors[idx].append((rem[idx], 1))
    return factors


# ---------------------------------------------------------------------------
# Kernels (module level so they pickle for worker processes)
# ---------------------------------------------------------------------------

def _gfp_kernel(task):
    lo, hi, residue_filter, zre, zim, znorm = task
    flags = _composite_flags(lo, hi)
    hits = []
    for n in _filtered_range(lo, hi, residue_filter):
        if not flags[n - lo]:
            continue
        if gcd(n, znorm) != 1:
            continue
        s = (zre * zre + zim * zim) % n
        inv = pow(s, -1, n)
        a, b = zre % n, zim % n
        ra, rb = (a * a - b * b) * inv % n, 2 * a * b * inv % n
        if _pow_components(ra, rb, script_F(n), n) == (1, 0):
            hits.append(n)
    return hits


def _gaussian_prefilter_passes(n: int) -> bool:
    """True unless some valid prefilter base already refutes n."""
    for zre, zim, znorm in _PREFILTER_BASES:
        if gcd(n, znorm) == 1:
            s = znorm % n
            inv = pow(s, -1, n)
            ra, rb = (zre * zre - zim * zim) * inv % n, 2 * zre * zim * inv % n
            return _pow_components(ra, rb, script_F(n), n) == (1, 0)
    return True  # no valid base in the chain: decide exactly later


def _carmichael_type_kernel(task):
    """Prefiltered scan for g_carmichael / g_lehmer / carmichael / williams_1."""
    lo, hi, residue_filter, which = task
    flags = _composite_flags(lo, hi)
    hits = []
    for n in _filtered_range(lo, hi, residue_filter):
        if not flags[n - lo]:
            continue
        if which in ("carmichael", "williams_1"):
            # both imply odd 2-pseudoprime
            if n % 2 == 0 or pow(2, n - 1, n) != 1:
                continue
            fac = factorize(n).factors
            ok = (
                _carmichael_from_factors(n, fac)
                if which == "carmichael"
                else _r_williams_from_factors(n, fac, 1)
            )
        else:
            # G-Carmichael numbers pass every valid Gaussian base
            if not _gaussian_prefilter_passes(n):
                continue
            fac = factorize(n).factors
            if which == "g_carmichael":
                ok = _g_carmichael_from_factors(n, fac)
            else:  # g_lehmer: the multi-factor sequence; pairs live under twin_pair_product
                ok = len(fac) >= 3 and _g_lehmer_from_factors(n, fac)
        if ok:
            hits.append(n)
    return hits


def _factored_kernel(task):
    """Exact scan for classifiers that need the factorization of every n."""
    lo, hi, residue_filter, which = task
    hits = []
    for blo in range(lo, hi, _FACTOR_BATCH):
        bhi = min(blo + _FACTOR_BATCH, hi)
        factors = _factor_batch(blo, bhi)
        for n in _filtered_range(blo, bhi, residue_filter):
            fac = factors[n - blo]
            if which == "g_cyclic":
                ok = gcd(_phi_of(fac), n) == 1
            elif which == "congruence_exception":
                P = _phi_of(fac)
                if gcd(P, n) != 1:
                    ok = False
                else:
                    L = _lambda_of(fac)
                    ok = (
                        pow(P % n, P, n) != 1 % n
                        and pow(L % n, L, n) != 1 % n
                    )
            else:  # giuga
                ok = _giuga_from_factors(n, fac)
            if ok:
                hits.append(n)
    return hits


def _phi_of(factors) -> int:
    r = 1
    for p, k in factors:
        r *= _gauss_phi_pp(p, k)
    return r


def _lambda_of(factors) -> int:
    r = 1
    for p, k in factors:
        r = lcm(r, _gauss_lambda_pp(p, k))
    return r


def _intersection_kernel(task):
    """n = 3 mod 4 that are simultaneously Carmichael and G-Carmichael.

    Any such n (either route) is an odd base-2 Fermat pseudoprime, so the
    scan tests that single congruence first and evaluates the exact
    predicates, including the Williams consistency cross-check, on the
    survivors only.
    """
    lo, hi = task
    flags = _composite_flags(lo, hi)
    hits = []
    start = lo + (3 - lo) % 4
    for n in range(start, hi, 4):
        if not flags[n - lo]:
            continue
        if pow(2, n - 1, n) != 1:
            continue
        if carmichael_and_g_carmichael_3mod4(n):
            hits.append(n)
    return hits


def _psp_mask_kernel(task):
    """Composite n (after filter) with their classical-pseudoprime base mask."""
    lo, hi, residue_filter, prime_powers, base_decomp = task
    flags = _composite_flags(lo, hi)
    out = []
    for n in _filtered_range(lo, hi, residue_filter):
        if not flags[n - lo]:
            continue
        e = n - 1
        powers = {}
        for p in prime_powers:
            if n % p:
                powers[p] = pow(p, e, n)
        mask = 0
        for j, decomp in enumerate(base_decomp):
            acc = 1
            for p, k in decomp:
                x = powers.get(p)
                if x is None:
                    acc = -1
                    break
                for _ in range(k):
                    acc = acc * x % n
            if acc == 1:
                mask |= 1 << j
        if mask:
            out.append((n, mask))
    return out


def _twin_pair_products(query: RangeQuery) -> list[int]:
    """Products pq of twin primes with p+q divisible by 8 (equivalently p = 3 mod 4)."""
    hits = []
    p = 3
    while p * (p + 2) < query.hi:
        if (
            p % 4 == 3
            and is_prime(p)
            and is_prime(p + 2)
            and p * (p + 2) >= query.lo
        ):
            n = p * (p + 2)
            if query.residue_filter is None or (
                n % query.residue_filter[0] == query.residue_filter[1]
            ):
                hits.append(n)
        p += 2
    return hits


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def search_gfp(
    query: RangeQuery,
    z: GaussianBase,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
    progress=None,
) -> list[int]:
    """Ascending Gaussian Fermat pseudoprimes to base z in the query range."""
    tasks = [
        (lo, hi, query.residue_filter, z.re, z.im, z.norm())
        for lo, hi in _blocks(query.lo, query.hi, block_size)
    ]
    parts = _run_blocks(_gfp_kernel, tasks, query.workers, progress)
    return [n for part in parts for n in part]


def search_classifier(
    query: RangeQuery,
    which: str,
    *,
    giuga_cap: int = DEFAULT_GIUGA_CAP,
    block_size: int = DEFAULT_BLOCK_SIZE,
    progress=None,
) -> list[int]:
    """Ascending n in the range satisfying the named classifier.

    'g_lehmer' lists the members with at least three prime factors (the
    published sequence); the two-factor members are exactly the
    'twin_pair_product' family.  'congruence_exception' means G-cyclic
    numbers failing both power congruences.
    """
    if which not in CLASSIFIER_NAMES:
        raise ValueError(f"unknown classifier {which!r}; choose from {CLASSIFIER_NAMES}")
    if which == "twin_pair_product":
        return _twin_pair_products(query)
    if which == "giuga" and query.hi - 1 > giuga_cap:
        raise ValueError(f"giuga cap exceeded: {query.hi - 1} > {giuga_cap}")
    blocks = _blocks(query.lo, query.hi, block_size)
    if which in ("g_carmichael", "g_lehmer", "carmichael", "williams_1"):
        kernel = _carmichael_type_kernel
    else:
        kernel = _factored_kernel
    tasks = [(lo, hi, query.residue_filter, which) for lo, hi in blocks]
    parts = _run_blocks(kernel, tasks, query.workers, progress)
    return [n for part in parts for n in part]


def joint_census(
    query: RangeQuery,
    gaussian_bases,
    integer_bases,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
    progress=None,
) -> CensusTable:
    """Count n that are jointly Gaussian pseudoprimes (rows) and classical
    pseudoprimes (columns) in the query range.

    Classical pseudoprimes are collected first (one modular exponentiation
    per prime dividing any column base); the Gaussian tests run only on
    those survivors.
    """
    gaussian_bases = tuple(gaussian_bases)
    integer_bases = tuple(integer_bases)
    counts = [[0] * len(integer_bases) for _ in gaussian_bases]
    if gaussian_bases and integer_bases:
        base_decomp = tuple(factorize(a).factors for a in integer_bases)
        prime_powers = tuple(sorted({p for d in base_decomp for p, _ in d}))
        tasks = [
            (lo, hi, query.residue_filter, prime_powers, base_decomp)
            for lo, hi in _blocks(query.lo, query.hi, block_size)
        ]
        parts = _run_blocks(_psp_mask_kernel, tasks, query.workers, progress)
        for part in parts:
            for n, mask in part:
                for i, z in enumerate(gaussian_bases):
                    if gaussian_fermat_ratio_test(n, z) is TestOutcome.PASS:
                        row = counts[i]
                        for j in range(len(integer_bases)):
                            if mask >> j & 1:
                                row[j] += 1
    return CensusTable(
        gaussian_bases=gaussian_bases,
        integer_bases=integer_bases,
        counts=tuple(tuple(row) for row in counts),
        limit=query.hi,
        residue_filter=query.residue_filter,
    )


def carmichael_intersection_scan(
    query: RangeQuery,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
    progress=None,
) -> list[int]:
    """n = 3 mod 4 in range that are both Carmichael and G-Carmichael.

    The residue filter is fixed to (4, 3); queries carrying any other
    filter are rejected.  Raises ConsistencyError if the Williams-route
    cross-check ever disagrees.
    """
    if query.residue_filter not in (None, (4, 3)):
        raise ValueError("this scan fixes the residue filter to (4, 3)")
    tasks = _blocks(query.lo, query.hi, block_size)
    parts = _run_blocks(_intersection_kernel, tasks, query.workers, progress)
    return [n for part in parts for n in part]


def verify_external_list(
    path,
    z: GaussianBase,
    residue_filter: tuple[int, int] | None = None,
) -> VerificationReport:
    """Run the Gaussian test over a file of candidate integers.

    The file holds one ASCII decimal integer per line; '#' lines are
    comments, blank lines are skipped, anything else unparsable counts as
    malformed.  Entries passing the test are returned (for a published
    Fermat-pseudoprime list they are the interesting finds); entries whose
    gcd with z*conj(z) exceeds 1 are tallied as invalid-base.
    """
    total_read = filtered = invalid = malformed = 0
    passing = []
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        for line in fh:
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if not text.isdigit():
                malformed += 1
                continue
            n = int(text)
            if not 2 <= n < MAX_ARG:
                malformed += 1
                continue
            total_read += 1
            if residue_filter is not None and n % residue_filter[0] != residue_filter[1]:
                continue
            filtered += 1
            outcome = gaussian_fermat_ratio_test(n, z)
            if outcome is TestOutcome.INVALID_BASE:
                invalid += 1
            elif outcome is TestOutcome.PASS:
                passing.append(n)
                log.warning("%d passes the Gaussian test to base %s", n, z)
    return VerificationReport(
        source=str(path),
        total_read=total_read,
        filtered=filtered,
        passing=tuple(passing),
        invalid_base=invalid,
        malformed_lines=malformed,
    )


# ---------------------------------------------------------------------------
# Serialization (byte-stable for fixed inputs)
# ---------------------------------------------------------------------------

def values_to_csv(values) -> str:
    return "n\n" + "".join(f"{v}\n" for v in values)


def table_to_csv(table: CensusTable) -> str:
    lines = ["base," + ",".join(str(a) for a in table.integer_bases)]
    for z, row in zip(table.gaussian_bases, table.counts):
        lines.append(f"{z}," + ",".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def _query_dict(query: RangeQuery) -> dict:
    return {
        "lo": query.lo,
        "hi": query.hi,
        "residue_filter": list(query.residue_filter) if query.residue_filter else None,
    }


def record_line(kind: str, query: RangeQuery | None, base, values) -> str:
    """One canonical JSON record: {kind, query, base, values}."""
    rec = {
        "kind": kind,
        "query": _query_dict(query) if query else None,
        "base": str(base) if base is not None else None,
        "values": list(values),
    }
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def table_to_records(table: CensusTable, query: RangeQuery) -> str:
    header = record_line(
        "joint_census_bases", query, None, [str(a) for a in table.integer_bases]
    )
    rows = [
        record_line("joint_census_row", query, z, row)
        for z, row in zip(table.gaussian_bases, table.counts)
    ]
    return "".join(line + "\n" for line in [header] + rows)
