"""
Multiplicative Group Module

Nonzero rationals as a sign bit plus a prime-exponent map, and the operations
the reduction needs on subgroups of Q*: the -1 product test, odd-basis
selection, rational span membership and core extraction for dependent pairs.

Every identity this module hands out (witness exponents, certificates, cores)
is re-verified with exact arithmetic before it is returned.

Version: 1.0.0
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import (
    CertificateError,
    DependenceError,
    DomainError,
    MinusOneProductError,
    OddPairError,
    TrivialPairError,
)
from ..core.logger import get_logger
from .arith import factorize
from .exactla import (
    RationalMatrix,
    f2_select_independent,
    integer_kernel,
    integer_row_basis,
    solve_rational,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class SignedFactored:
    """(-1)^sign_bit * prod(p^e); exponents sorted by prime, no zero exponents"""
    sign_bit: int
    exponents: Tuple[Tuple[int, int], ...]
    origin: Optional[int] = field(default=None, compare=False)

    @classmethod
    def from_exponents(cls, sign_bit: int, exponents: Dict[int, int]) -> "SignedFactored":
        return cls(sign_bit & 1, tuple(sorted((p, e) for p, e in exponents.items() if e != 0)))

    @property
    def sign(self) -> int:
        return -1 if self.sign_bit else 1

    def exponent_map(self) -> Dict[int, int]:
        return dict(self.exponents)

    def primes(self) -> List[int]:
        return [p for p, _ in self.exponents]

    def is_unit(self) -> bool:
        """True for +1 and -1"""
        return not self.exponents

    def abs_vector(self, primes: Sequence[int]) -> List[int]:
        exps = self.exponent_map()
        return [exps.get(p, 0) for p in primes]

    def __mul__(self, other: "SignedFactored") -> "SignedFactored":
        exps = self.exponent_map()
        for p, e in other.exponents:
            exps[p] = exps.get(p, 0) + e
        return SignedFactored.from_exponents(self.sign_bit ^ other.sign_bit, exps)

    def __pow__(self, k: int) -> "SignedFactored":
        return SignedFactored.from_exponents(self.sign_bit & k, {p: e * k for p, e in self.exponents})

    def value(self) -> Fraction:
        """The represented rational; only call this on small values"""
        result = Fraction(self.sign)
        for p, e in self.exponents:
            result *= Fraction(p) ** e
        return result

    def to_int(self) -> int:
        v = self.value()
        if v.denominator != 1:
            raise DomainError(f"{v} is not an integer")
        return v.numerator


ONE = SignedFactored(0, ())
MINUS_ONE = SignedFactored(1, ())


def signed_factored(n: int) -> SignedFactored:
    """
    Canonical signed factored form of a nonzero integer.

    Examples:
        >>> signed_factored(-12)
        SignedFactored(sign_bit=1, exponents=((2, 2), (3, 1)), origin=-12)
    """
    f = factorize(n)
    return SignedFactored(int(n < 0), f.factors, origin=n)


def product(gens: Sequence[SignedFactored], exponents: Sequence[int]) -> SignedFactored:
    result = ONE
    for g, e in zip(gens, exponents):
        if e:
            result = result * g ** e
    return result


def _prime_support(elements: Sequence[SignedFactored]) -> List[int]:
    return sorted({p for g in elements for p in g.primes()})


def _exponent_matrix(elements: Sequence[SignedFactored], primes: Sequence[int]) -> List[List[int]]:
    """Rows indexed by primes, columns by elements"""
    columns = [g.abs_vector(primes) for g in elements]
    return [[col[i] for col in columns] for i in range(len(primes))]


def has_minus_one_product(gens: Sequence[SignedFactored]) -> Optional[List[int]]:
    """
    Exponents e with prod(gens_i^e_i) = -1, or None if -1 is not in the group.

    The kernel lattice of the absolute-exponent matrix carries every product
    equal to +-1; the sign of such a product is the parity of the exponents on
    negative generators, a linear functional mod 2, so -1 is reachable iff it
    is odd on some kernel basis vector.

    Examples:
        >>> has_minus_one_product([signed_factored(2), signed_factored(-8)])
        [3, -1]
    """
    if not gens:
        return None
    primes = _prime_support(gens)
    kernel = integer_kernel(_exponent_matrix(gens, primes), cols=len(gens))
    negatives = [j for j, g in enumerate(gens) if g.sign_bit]

    for v in kernel:
        if sum(v[j] for j in negatives) % 2:
            if product(gens, v) != MINUS_ONE:
                raise CertificateError(f"kernel vector {v} does not multiply to -1")
            return v
    return None


@dataclass(frozen=True)
class OddCertificate:
    """gens[index]^x = prod over the basis of basis_j^exponents_j, with x odd"""
    index: int
    x: int
    exponents: Tuple[int, ...]


@dataclass(frozen=True)
class OddBasis:
    indices: Tuple[int, ...]
    certificates: Tuple[OddCertificate, ...]


def odd_basis(gens: Sequence[SignedFactored]) -> OddBasis:
    """
    Multiplicatively independent subset S of gens such that every generator
    has an odd power in the group generated by S.

    The group H generated by gens has no torsion once -1 is excluded, so it is
    identified with the lattice L of absolute exponent vectors. Generators are
    written in an echelon basis of L, their coordinates reduced mod 2, and S is
    the greedy independent selection in L/2L. L/<S> then has odd order, which
    gives each certificate an odd x.

    Raises:
        DomainError: a generator equals +-1
        MinusOneProductError: some product of generators equals -1
        CertificateError: a certificate failed exact re-verification
    """
    if any(g.is_unit() for g in gens):
        raise DomainError("odd_basis generators must differ from +-1")
    witness = has_minus_one_product(gens)
    if witness is not None:
        raise MinusOneProductError(f"product with exponents {witness} equals -1", exponents=witness)
    if not gens:
        return OddBasis((), ())

    primes = _prime_support(gens)
    vectors = [g.abs_vector(primes) for g in gens]
    lattice = integer_row_basis(vectors, len(primes))
    in_lattice = RationalMatrix.from_columns(lattice, len(primes))

    parities = []
    for i, v in enumerate(vectors):
        coords = solve_rational(in_lattice, v)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise CertificateError(f"generator {i} is not an integer combination of the lattice basis")
        parities.append([c.numerator % 2 for c in coords])

    selected = f2_select_independent(parities)
    if len(selected) != len(lattice):
        raise CertificateError(f"selected {len(selected)} elements for a group of rank {len(lattice)}")

    basis = [gens[i] for i in selected]
    in_basis = RationalMatrix.from_columns([vectors[i] for i in selected], len(primes))
    certificates = []
    for i, v in enumerate(vectors):
        f = solve_rational(in_basis, v)
        if f is None:
            raise CertificateError(f"generator {i} is outside the span of the selected basis")
        x = lcm(*(c.denominator for c in f)) if f else 1
        exponents = tuple(int(c * x) for c in f)
        if x % 2 == 0 or gens[i] ** x != product(basis, exponents):
            raise CertificateError(f"certificate for generator {i} failed: x = {x}, exponents = {exponents}")
        certificates.append(OddCertificate(index=i, x=x, exponents=exponents))

    logger.debug(f"odd basis: kept {len(selected)} of {len(gens)} generators")
    return OddBasis(tuple(selected), tuple(certificates))


@dataclass(frozen=True)
class SpanCoordinates:
    """
    |target| = prod |basis_i|^f_i formally. Signs are carried raw: target_sign
    and basis_signs are sign bits; callers combine them once a modulus is known.
    """
    f: Tuple[Fraction, ...]
    target_sign: int
    basis_signs: Tuple[int, ...]

    @property
    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.f)) if self.f else 1

    @property
    def sign_defect(self) -> Fraction:
        """s_a - sum f_i s_i"""
        return Fraction(self.target_sign) - sum((c * s for c, s in zip(self.f, self.basis_signs)), Fraction(0))


def check_independent(basis: Sequence[SignedFactored]) -> None:
    """Raise DependenceError unless the absolute values are multiplicatively independent"""
    if not basis:
        return
    primes = _prime_support(basis)
    kernel = integer_kernel(_exponent_matrix(basis, primes), cols=len(basis))
    if kernel:
        raise DependenceError(f"basis is multiplicatively dependent: relation {kernel[0]}")


def express_in_span(target: SignedFactored, basis: Sequence[SignedFactored]) -> Optional[SpanCoordinates]:
    """
    Rational exponents f with |target| = prod |basis_i|^f_i, or None if the
    exponent vector of |target| is outside the rational span of the basis.

    Examples:
        >>> express_in_span(signed_factored(6), [signed_factored(4), signed_factored(9)]).f
        (Fraction(1, 2), Fraction(1, 2))
    """
    check_independent(basis)
    primes = _prime_support([target, *basis])
    matrix = RationalMatrix.from_columns([g.abs_vector(primes) for g in basis], len(primes))
    f = solve_rational(matrix, target.abs_vector(primes))
    if f is None:
        return None
    return SpanCoordinates(f=tuple(f), target_sign=target.sign_bit, basis_signs=tuple(g.sign_bit for g in basis))


class SignCase(str, Enum):
    """How a dependent pair sits on its core c"""
    PLUS = "+"       # b = c^r, a = c^s
    MINUS = "-"      # b = c^r, a = -c^s
    NEG_B = "neg_b"  # b = -c^r, a = c^s (s odd, r even, b < 0)


@dataclass(frozen=True)
class Core:
    c: int
    r: int
    s: int
    sign_case: SignCase


def core_of(a: int, b: int) -> Core:
    """
    Core of a multiplicatively dependent pair: b^s = +-a^r with gcd(r, s) = 1,
    s >= 2, and c with b = c^r, a = +-c^s.

    The sign of c follows whichever of r, s is odd: s odd puts c on the sign
    of a, otherwise c takes the sign of b.

    Raises:
        TrivialPairError: |a| <= 1, |b| <= 1 or b = a^k
        OddPairError: b = -a^k
        DependenceError: a and b are multiplicatively independent

    Examples:
        >>> core_of(16, -8)
        Core(c=-2, r=3, s=4, sign_case=<SignCase.PLUS: '+'>)
    """
    if abs(a) <= 1 or abs(b) <= 1:
        raise TrivialPairError(f"core needs |a| > 1 and |b| > 1, got ({a}, {b})")
    fa, fb = factorize(a), factorize(b)
    if fa.primes() != fb.primes():
        raise DependenceError(f"{a} and {b} are multiplicatively independent")

    va, vb = [e for _, e in fa.factors], [e for _, e in fb.factors]
    ratio = Fraction(vb[0], va[0])
    r, s = ratio.numerator, ratio.denominator
    if any(s * y != r * x for x, y in zip(va, vb)):
        raise DependenceError(f"{a} and {b} are multiplicatively independent")
    if s == 1:
        if b == a ** r:
            raise TrivialPairError(f"{b} = {a}^{r}")
        raise OddPairError(f"{b} = -{a}^{r}")

    magnitude = 1
    for (p, e) in fa.factors:
        magnitude *= p ** (e // s)

    if s % 2 == 0:
        c = magnitude if b > 0 else -magnitude
        case = SignCase.PLUS if a == c ** s else SignCase.MINUS
    else:
        c = magnitude if a > 0 else -magnitude
        if b == c ** r:
            case = SignCase.PLUS
        elif r % 2:
            c = -c
            case = SignCase.MINUS
        else:
            case = SignCase.NEG_B

    expected_b = -(c ** r) if case is SignCase.NEG_B else c ** r
    expected_a = -(c ** s) if case is SignCase.MINUS else c ** s
    if (a, b) != (expected_a, expected_b):
        raise CertificateError(f"core identities fail for ({a}, {b}) with c = {c}, r = {r}, s = {s}")
    return Core(c=c, r=r, s=s, sign_case=case)
