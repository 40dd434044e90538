import pytest
from oracle_utils import composite_sieve, primes_below

from gausspseudo.fermat import (
    BASE_PANEL,
    EQUIVALENCE_PANEL,
    TABLE_GAUSSIAN_BASES,
    TestOutcome,
    classical_fermat_test,
    gaussian_fermat_im_test,
    gaussian_fermat_ratio_test,
    is_fermat_psp,
    is_gfp,
)
from gausspseudo.residues import GaussianBase

Z12 = GaussianBase(1, 2)


class TestRatioForm:
    def test_prime_passes(self):
        assert gaussian_fermat_ratio_test(7, Z12) is TestOutcome.PASS

    def test_composite_fails(self):
        assert gaussian_fermat_ratio_test(9, Z12) is TestOutcome.FAIL

    def test_invalid_base(self):
        assert gaussian_fermat_ratio_test(15, Z12) is TestOutcome.INVALID_BASE

    def test_domain(self):
        with pytest.raises(ValueError):
            gaussian_fermat_ratio_test(1, Z12)


class TestImForm:
    def test_prime_passes(self):
        assert gaussian_fermat_im_test(13, Z12) is TestOutcome.PASS

    def test_composite_fails(self):
        assert gaussian_fermat_im_test(9, Z12) is TestOutcome.FAIL

    def test_invalid_base(self):
        assert gaussian_fermat_im_test(10, Z12) is TestOutcome.INVALID_BASE


class TestGfp:
    def test_143(self):
        assert is_gfp(143, Z12)

    def test_prime_is_not_pseudoprime(self):
        assert not is_gfp(13, Z12)

    def test_degenerate_base(self):
        assert is_gfp(9, GaussianBase(1, 1))

    def test_degenerate_base_catches_all_odd_composites(self):
        # unit ratio of 1+1i is i and F(odd) = 0 mod 4, so every odd
        # composite is a pseudoprime to this base
        flags = composite_sieve(500)
        z = GaussianBase(1, 1)
        for n in range(3, 500):
            expected = bool(flags[n]) and n % 2 == 1
            assert is_gfp(n, z) == expected, n


class TestClassicalTest:
    def test_341_base_2(self):
        assert classical_fermat_test(341, 2) is TestOutcome.PASS

    def test_15_base_2(self):
        assert classical_fermat_test(15, 2) is TestOutcome.FAIL

    def test_15_base_3(self):
        assert classical_fermat_test(15, 3) is TestOutcome.INVALID_BASE

    def test_base_domain(self):
        with pytest.raises(ValueError):
            classical_fermat_test(15, 1)

    def test_psp(self):
        assert is_fermat_psp(341, 2)
        assert not is_fermat_psp(341, 3)
        assert not is_fermat_psp(11, 2)

    def test_341_smallest_base2_psp(self):
        flags = composite_sieve(342)
        hits = [n for n in range(3, 342) if flags[n] and is_fermat_psp(n, 2)]
        assert hits == [341]


class TestFormEquivalence:
    def test_forms_agree_small(self):
        for n in range(2, 1000):
            for z in EQUIVALENCE_PANEL:
                assert gaussian_fermat_ratio_test(n, z) is gaussian_fermat_im_test(
                    n, z
                ), (n, str(z))

    def test_panel_sizes(self):
        assert len(TABLE_GAUSSIAN_BASES) == 10
        assert len(BASE_PANEL) == 12
        assert len(EQUIVALENCE_PANEL) == 20


class TestPrimeCompleteness:
    def test_primes_never_fail(self):
        for p in primes_below(2000):
            for z in BASE_PANEL:
                assert gaussian_fermat_ratio_test(p, z) is not TestOutcome.FAIL, (
                    p,
                    str(z),
                )


class TestBaseNormEquivalence:
    def test_mirrored_bases_agree_smoke(self):
        flags = composite_sieve(5000)
        pairs = [
            (GaussianBase(1, 2), GaussianBase(2, 1)),
            (GaussianBase(1, 1), GaussianBase(1, -1)),
        ]
        for z, w in pairs:
            assert z.norm() == w.norm()
            for n in range(2, 5000):
                if flags[n]:
                    assert is_gfp(n, z) == is_gfp(n, w), (n, str(z))
