"""
Exact Integer Arithmetic Module

Primality, factorization, modular powers, multiplicative orders, prime
enumeration and integer roots. All functions are pure and exact; public inputs
are bounded by the configured magnitude cap (2^62 by default).

Main Categories:
    - Primality: deterministic Miller-Rabin for n < 2^64
    - Factorization: trial division, then Pollard-rho (Brent) with fixed seeds
    - Orders: descent through the prime-power divisors of p - 1
    - Enumeration: segmented sieve of Eratosthenes over [lo, hi)

Version: 1.0.0
"""
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..config import MAGNITUDE_CAP, PRIME_RANGE_CAP, TRIAL_DIVISION_LIMIT
from ..core.cache import factor_cache
from ..core.exceptions import DomainError, ValidationError
from ..core.logger import get_logger

logger = get_logger(__name__)

# Bases proven sufficient for every n < 2^64
MILLER_RABIN_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)
DEFAULT_SEGMENT = 1 << 16

PrimePowers = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class Factorization:
    """n = sign * prod(prime ** exponent), primes strictly increasing"""
    n: int
    sign: int
    factors: PrimePowers

    def value(self) -> int:
        result = self.sign
        for prime, exponent in self.factors:
            result *= prime ** exponent
        return result

    def primes(self) -> List[int]:
        return [prime for prime, _ in self.factors]

    def as_dict(self) -> dict:
        return dict(self.factors)


def check_magnitude(n: int, name: str = "value", cap: int = MAGNITUDE_CAP) -> int:
    """Reject integers whose absolute value exceeds the cap"""
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValidationError(f"{name} must be an integer, got {n!r}")
    if abs(n) > cap:
        raise ValidationError(f"{name} = {n} exceeds the magnitude cap 2^{cap.bit_length() - 1}")
    return n


def valuation(n: int, q: int) -> int:
    """v_q(n): the largest e with q^e | n (n nonzero, q >= 2)"""
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    n = abs(n)
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e


def is_prime(n: int) -> bool:
    """
    Deterministic primality test for 0 <= n < 2^64.

    Examples:
        >>> is_prime(97)
        True
        >>> is_prime(561)
        False
    """
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < SMALL_PRIMES[-1] ** 2:
        return True

    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for base in MILLER_RABIN_BASES:
        a = base % n
        if a == 0:
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


def _pollard_brent(n: int, c: int) -> int:
    """One Brent cycle search with f(y) = y^2 + c; returns a divisor of n, possibly n"""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
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
        # batched gcd overshot; back up one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int) -> int:
    """Nontrivial divisor of a composite n; seeds c = 1, 2, ... keep runs reproducible"""
    if n % 2 == 0:
        return 2
    # cofactors below 2^62 left after trial division have at most three prime factors
    for k in (2, 3):
        root = _floor_root(n, k)
        if root ** k == n:
            return root
    c = 1
    while True:
        d = _pollard_brent(n, c)
        if d != n:
            return d
        c += 1


def _factor_large(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _split(n)
    _factor_large(d, out)
    _factor_large(n // d, out)


def factorize(n: int) -> Factorization:
    """
    Factor a nonzero integer with |n| <= 2^62.

    Trial division up to TRIAL_DIVISION_LIMIT, then Pollard-rho (Brent) on the
    cofactor. Results are cached per |n|.

    Examples:
        >>> factorize(-12).factors
        ((2, 2), (3, 1))
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValidationError(f"factorize expects an integer, got {n!r}")
    if n == 0:
        raise DomainError("cannot factorize 0")
    check_magnitude(n, "n")

    sign = -1 if n < 0 else 1
    cached = factor_cache.get(n)
    if cached is not None:
        return Factorization(n=n, sign=sign, factors=cached)

    m = abs(n)
    found = {}
    for p in SMALL_PRIMES:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    d = SMALL_PRIMES[-1] + 2
    limit = min(TRIAL_DIVISION_LIMIT, isqrt(m))
    while d <= limit:
        if m % d == 0:
            while m % d == 0:
                found[d] = found.get(d, 0) + 1
                m //= d
            limit = min(limit, isqrt(m))
        d += 2
    if m > 1:
        _factor_large(m, found)

    factors = tuple(sorted(found.items()))
    factor_cache.set(n, factors)
    return Factorization(n=n, sign=sign, factors=factors)


def factor_with_primes(n: int, primes: Sequence[int]) -> PrimePowers:
    """
    Factor n >= 1 by trial division over an ascending prime list that covers sqrt(n).

    The scanner factors p - 1 this way, once per prime, with the sieve's base primes.
    """
    out = []
    for q in primes:
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out.append((q, e))
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base^exp mod modulus in [0, modulus); negative bases are reduced first"""
    if modulus < 2:
        raise DomainError(f"modulus must be at least 2, got {modulus}")
    if exp < 0:
        raise DomainError(f"exponent must be non-negative, got {exp}")
    check_magnitude(modulus, "modulus")
    return pow(base % modulus, exp, modulus)


def multiplicative_order(a: int, p: int, p_minus_1: Optional[PrimePowers] = None) -> int:
    """
    ord_p(a): least e >= 1 with a^e = 1 (mod p).

    Args:
        a: base, p must not divide it
        p: prime modulus
        p_minus_1: optional factorization of p - 1 as ((q, e), ...) to share across bases

    Raises:
        DomainError: if p divides a or p < 2
    """
    if p < 2:
        raise DomainError(f"modulus must be a prime, got {p}")
    a %= p
    if a == 0:
        raise DomainError(f"{p} divides the base; order undefined")
    if a == 1:
        return 1
    if p_minus_1 is None:
        p_minus_1 = factorize(p - 1).factors if p > 2 else ()

    order = p - 1
    for q, e in p_minus_1:
        order //= q ** e
        x = pow(a, order, p)
        while x != 1:
            x = pow(x, q, p)
            order *= q
    return order


def _small_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array"""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i::i] = False
    return np.flatnonzero(flags).astype(np.int64)


def base_primes(hi: int) -> List[int]:
    """Primes up to sqrt(hi - 1), enough to sieve or trial-divide anything below hi"""
    return _small_sieve(isqrt(max(hi - 1, 0))).tolist()


def iter_prime_segments(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[List[int]]:
    """Yield the primes of [lo, hi) one segment at a time, ascending"""
    if lo > hi:
        raise ValidationError(f"empty range: lo = {lo} > hi = {hi}")
    if hi > PRIME_RANGE_CAP:
        raise ValidationError(f"hi = {hi} exceeds the enumeration bound 2^40")
    if segment_size < 1:
        raise ValidationError(f"segment size must be positive, got {segment_size}")

    lo = max(lo, 2)
    if lo >= hi:
        return
    sieving = _small_sieve(isqrt(hi - 1))

    for start in range(lo, hi, segment_size):
        stop = min(start + segment_size, hi)
        flags = np.ones(stop - start, dtype=bool)
        for p in sieving:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            flags[first - start::p] = False
        yield (np.flatnonzero(flags) + start).tolist()


def primes_in(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT) -> List[int]:
    """
    Ascending list of the primes in [lo, hi).

    Examples:
        >>> primes_in(10, 30)
        [11, 13, 17, 19, 23, 29]
    """
    out: List[int] = []
    for segment in iter_prime_segments(lo, hi, segment_size):
        out.extend(segment)
    return out


def _floor_root(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0 by integer Newton iteration"""
    if n < 2 or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def int_root(x: int, k: int) -> Optional[int]:
    """
    Exact integer k-th root of x, or None if there is none.

    Raises:
        DomainError: k < 1, or x < 0 with k even

    Examples:
        >>> int_root(4096, 4)
        8
        >>> int_root(-32, 5)
        -2
        >>> int_root(12, 2) is None
        True
    """
    if k < 1:
        raise DomainError(f"root index must be at least 1, got {k}")
    if x < 0 and k % 2 == 0:
        raise DomainError(f"even root ({k}) of negative {x}")
    r = _floor_root(abs(x), k)
    if r ** k != abs(x):
        return None
    return -r if x < 0 else r
