"""
Unit tests for exact integer arithmetic
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint, isprime, n_order, primerange

from expcong.core.cache import factor_cache
from expcong.core.exceptions import DomainError, ValidationError
from expcong.numtheory.arith import (
    base_primes,
    check_magnitude,
    factor_with_primes,
    factorize,
    int_root,
    is_prime,
    iter_prime_segments,
    mod_pow,
    multiplicative_order,
    primes_in,
    valuation,
)

CAP = 1 << 62


class TestPrimality:
    """Test cases for is_prime"""

    def test_small_values(self):
        assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_carmichael_numbers_rejected(self):
        for n in (561, 1105, 1729, 2465, 2821, 6601, 8911):
            assert is_prime(n) is False

    def test_large_primes(self):
        assert is_prime(2 ** 61 - 1) is True
        assert is_prime((2 ** 31 - 1) * (2 ** 31 + 11)) is False

    def test_agrees_with_sympy_below_ten_thousand(self):
        for n in range(10 ** 4):
            assert is_prime(n) == isprime(n), n

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=0, max_value=CAP))
    def test_agrees_with_sympy(self, n):
        assert is_prime(n) == isprime(n)


class TestFactorize:
    """Test cases for factorize and the factorization cache"""

    def test_negative_input(self):
        f = factorize(-12)
        assert f.sign == -1
        assert f.factors == ((2, 2), (3, 1))
        assert f.value() == -12
        assert f.primes() == [2, 3]

    def test_units(self):
        assert factorize(1).factors == ()
        assert factorize(-1).value() == -1

    def test_zero_rejected(self):
        with pytest.raises(DomainError, match="cannot factorize 0"):
            factorize(0)

    def test_magnitude_cap(self):
        with pytest.raises(ValidationError, match="magnitude cap"):
            factorize(CAP + 1)

    def test_semiprime_beyond_trial_division(self):
        p, q = 1_000_003, 998_244_353
        assert factorize(p * q).factors == ((p, 1), (q, 1))

    def test_prime_square_cofactor(self):
        p = 1_000_000_007
        assert factorize(3 * p * p).factors == ((3, 1), (p, 2))

    def test_cache_hit(self):
        factorize(360)
        factorize(-360)
        stats = factor_cache.get_stats()
        assert stats["hits"] == 1
        assert stats["current_size"] == 1

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=2, max_value=CAP))
    def test_agrees_with_sympy(self, n):
        assert factorize(n).as_dict() == factorint(n)


class TestHelpers:
    """Test cases for magnitude checks, valuations and powers"""

    def test_check_magnitude(self):
        assert check_magnitude(-CAP) == -CAP
        with pytest.raises(ValidationError, match="must be an integer"):
            check_magnitude(True)
        with pytest.raises(ValidationError, match="must be an integer"):
            check_magnitude(2.0)
        with pytest.raises(ValidationError, match="a = "):
            check_magnitude(CAP + 1, "a")

    def test_valuation(self):
        assert valuation(48, 2) == 4
        assert valuation(-81, 3) == 4
        assert valuation(7, 2) == 0
        with pytest.raises(DomainError):
            valuation(0, 2)

    def test_mod_pow(self):
        assert mod_pow(-2, 3, 7) == 6
        assert mod_pow(5, 0, 11) == 1
        with pytest.raises(DomainError):
            mod_pow(2, 3, 1)
        with pytest.raises(DomainError):
            mod_pow(2, -1, 7)

    def test_factor_with_primes(self):
        assert factor_with_primes(12, [2, 3, 5]) == ((2, 2), (3, 1))
        assert factor_with_primes(202, [2, 3, 5, 7, 11]) == ((2, 1), (101, 1))
        assert factor_with_primes(1, [2, 3]) == ()


class TestMultiplicativeOrder:
    """Test cases for multiplicative_order"""

    def test_examples(self):
        assert multiplicative_order(3, 7) == 6
        assert multiplicative_order(2, 7) == 3
        assert multiplicative_order(1, 13) == 1
        assert multiplicative_order(-1, 13) == 2
        assert multiplicative_order(2, 17) == 8

    def test_shared_factorization(self):
        p = 10007
        p_minus_1 = factorize(p - 1).factors
        for a in (2, 3, 5, -7):
            assert multiplicative_order(a, p, p_minus_1) == multiplicative_order(a, p)

    def test_base_divisible_by_p(self):
        with pytest.raises(DomainError, match="divides the base"):
            multiplicative_order(14, 7)

    def test_agrees_with_sympy(self):
        for p in primerange(3, 400):
            for a in range(2, 12):
                if a % p:
                    assert multiplicative_order(a, p) == n_order(a, p), (a, p)


class TestPrimeEnumeration:
    """Test cases for the segmented sieve"""

    def test_primes_in(self):
        assert primes_in(10, 30) == [11, 13, 17, 19, 23, 29]
        assert primes_in(0, 2) == []
        assert primes_in(2, 3) == [2]
        assert primes_in(5, 5) == []

    def test_count_below_ten_thousand(self):
        assert len(primes_in(3, 10 ** 4)) == 1228

    def test_segments_match_sympy(self):
        segments = list(iter_prime_segments(1000, 5000, segment_size=777))
        assert len(segments) == 6
        assert [p for s in segments for p in s] == list(primerange(1000, 5000))

    def test_invalid_ranges(self):
        with pytest.raises(ValidationError, match="empty range"):
            primes_in(10, 5)
        with pytest.raises(ValidationError, match="2\\^40"):
            primes_in(0, (1 << 40) + 1)
        with pytest.raises(ValidationError, match="segment size"):
            primes_in(0, 10, segment_size=0)

    def test_base_primes(self):
        assert base_primes(100) == [2, 3, 5, 7]
        assert base_primes(2) == []


class TestIntRoot:
    """Test cases for int_root"""

    def test_examples(self):
        assert int_root(4096, 4) == 8
        assert int_root(-32, 5) == -2
        assert int_root(12, 2) is None
        assert int_root(0, 3) == 0
        assert int_root(7, 1) == 7

    def test_domain(self):
        with pytest.raises(DomainError, match="even root"):
            int_root(-4, 2)
        with pytest.raises(DomainError, match="at least 1"):
            int_root(8, 0)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=-(10 ** 6), max_value=10 ** 6), st.integers(min_value=1, max_value=7))
    def test_exact_powers(self, r, k):
        x = r ** k
        if x < 0 and k % 2 == 0:
            return
        assert int_root(x, k) == r or (k % 2 == 0 and int_root(x, k) == -r)
