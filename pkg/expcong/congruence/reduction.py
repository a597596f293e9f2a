"""
Reduction Module

Turns a list of pairs into order conditions and the order conditions into a
system of linear incongruences modulo 2^M.

Pipeline:
    1. classify every pair and sort it into a ConditionSet: integers whose
       orders must be odd (odd pairs), even (cores of even pairs, squared cores
       of strongly even pairs), divisible by an odd prime (divisible pairs), and
       irrational pairs
    2. stop early if a trivial pair is always solvable or the odd list
       multiplies to -1; otherwise shrink the odd list to an odd basis
    3. split the even list into A (exponent vector in the rational span of
       the odd basis) and B, choose M, and emit one row per element of A

Modes:
    - literal: rows sum(2^M f_i x_i) != 0 (mod 2^M), signs ignored
    - sign-extended: the same rows plus the affine offset
      2^(M-1) * (s_a - sum f_i s_i), where s_a, s_i are sign bits; this tracks
      the index of -1 (half of p - 1) and is the default

Version: 1.0.0
"""
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..core.exceptions import CertificateError, DomainError, ValidationError
from ..core.logger import get_logger, log_time
from ..numtheory.arith import factorize
from ..numtheory.multgroup import (
    SignedFactored,
    express_in_span,
    has_minus_one_product,
    odd_basis,
    product,
    signed_factored,
)
from .pairs import PairClass, TrivialSubcase, Variant, classify_pair

logger = get_logger(__name__)


class Mode(str, Enum):
    SIGN_EXTENDED = "sign-extended"
    LITERAL = "literal"

    @classmethod
    def parse(cls, value) -> "Mode":
        try:
            return cls(value)
        except ValueError:
            raise ValidationError(f"unknown mode {value!r}, expected one of {', '.join(m.value for m in cls)}")


class EarlyReason(str, Enum):
    TRIVIAL_ALWAYS_SOLVABLE = "trivial_always_solvable"
    MINUS_ONE_PRODUCT = "minus_one_product"


class EarlyVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    reason: EarlyReason
    pair: Optional[Tuple[int, int]] = None
    exponents: Optional[List[int]] = None


class OddCertificateEntry(BaseModel):
    """element^x = prod odd_list_j^exponents_j with x odd"""
    model_config = ConfigDict(frozen=True)

    element: int
    x: int
    exponents: List[int]


class DivisibleCondition(BaseModel):
    model_config = ConfigDict(frozen=True)

    core: int
    q: int


class ConditionSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    odd_list: List[int]
    odd_originals: List[int]
    odd_certificates: List[OddCertificateEntry]
    even_list: List[int]
    divisible_list: List[DivisibleCondition]
    irrational_list: List[Tuple[int, int]]
    eventually_insolvable: List[Tuple[int, int]]
    bad_primes: List[int]
    early_verdict: Optional[EarlyVerdict] = None
    classes: List[PairClass]

    def has_sign(self) -> bool:
        """Whether any odd or even entry is negative"""
        return any(v < 0 for v in self.odd_list + self.odd_originals + self.even_list)


class Row(BaseModel):
    """coeffs·x + offset != 0 (mod 2^M)"""
    model_config = ConfigDict(frozen=True)

    coeffs: List[int]
    offset: int
    source: int


class IncongruenceSystem(BaseModel):
    model_config = ConfigDict(frozen=True)

    modulus_log2: int
    num_vars: int
    variables: List[int]
    rows: List[Row]
    mode: Mode
    a_members: List[int]
    b_members: List[int]

    @property
    def modulus(self) -> int:
        return 1 << self.modulus_log2

    def row_values(self, x: Sequence[int]) -> List[int]:
        mod = self.modulus
        return [(sum(c * xi for c, xi in zip(row.coeffs, x)) + row.offset) % mod for row in self.rows]

    def satisfied_by(self, x: Sequence[int]) -> bool:
        return len(x) == self.num_vars and all(v != 0 for v in self.row_values(x))


def _sort_key(v: int):
    return (abs(v), v < 0)


def _dedupe(values, key=None) -> list:
    return sorted(set(values), key=key)


def _bad_primes(pairs: Sequence[Tuple[int, int]]) -> List[int]:
    primes = {2}
    for a, b in pairs:
        for v in (a, b):
            if v != 0:
                primes.update(factorize(v).primes())
    return sorted(primes)


def _validate_pairs(pairs) -> List[Tuple[int, int]]:
    out = []
    for item in pairs:
        if len(item) != 2:
            raise ValidationError(f"a pair needs exactly two integers, got {item!r}")
        out.append((item[0], item[1]))
    if not out:
        raise ValidationError("at least one pair is required")
    return out


@log_time
def build_conditions(pairs: Sequence[Tuple[int, int]]) -> ConditionSet:
    """
    Classify the pairs and collect their order conditions.

    Always-solvable trivial pairs set early_verdict trivial_always_solvable;
    eventually-insolvable trivial pairs are recorded and otherwise dropped.
    A -1 product among the odd list sets early_verdict minus_one_product;
    otherwise the odd list is replaced by an odd basis, with a certificate for
    every original element.
    """
    pairs = _validate_pairs(pairs)
    classes = [classify_pair(a, b) for a, b in pairs]

    early = None
    odd, even, divisible, irrational, eventually = [], [], [], [], []
    for pc in classes:
        if pc.variant is Variant.TRIVIAL:
            if pc.subcase is TrivialSubcase.ALWAYS_SOLVABLE:
                if early is None:
                    early = EarlyVerdict(reason=EarlyReason.TRIVIAL_ALWAYS_SOLVABLE, pair=(pc.a, pc.b))
            else:
                eventually.append((pc.a, pc.b))
        elif pc.variant is Variant.ODD:
            odd.append(pc.a)
        elif pc.variant is Variant.EVEN:
            even.append(pc.core)
        elif pc.variant is Variant.STRONGLY_EVEN:
            even.append(pc.core * pc.core)
        elif pc.variant is Variant.DIVISIBLE:
            divisible.append((pc.core, pc.q))
        else:
            irrational.append((pc.a, pc.b))

    odd_originals = _dedupe(odd, key=_sort_key)
    odd_list = odd_originals
    certificates = []
    if odd_originals:
        gens = [signed_factored(o) for o in odd_originals]
        witness = has_minus_one_product(gens)
        if witness is not None:
            logger.info(f"odd list {odd_originals} multiplies to -1 with exponents {witness}")
            if early is None:
                early = EarlyVerdict(reason=EarlyReason.MINUS_ONE_PRODUCT, exponents=witness)
        else:
            basis = odd_basis(gens)
            odd_list = [odd_originals[i] for i in basis.indices]
            certificates = [
                OddCertificateEntry(element=odd_originals[c.index], x=c.x, exponents=list(c.exponents))
                for c in basis.certificates
            ]

    cs = ConditionSet(
        odd_list=odd_list,
        odd_originals=odd_originals,
        odd_certificates=certificates,
        even_list=_dedupe(even, key=_sort_key),
        divisible_list=[DivisibleCondition(core=c, q=q) for c, q in _dedupe(divisible, key=lambda t: (_sort_key(t[0]), t[1]))],
        irrational_list=_dedupe(irrational),
        eventually_insolvable=_dedupe(eventually),
        bad_primes=_bad_primes(pairs),
        early_verdict=early,
        classes=classes,
    )
    logger.info(
        f"conditions: {len(cs.odd_list)} odd, {len(cs.even_list)} even, "
        f"{len(cs.divisible_list)} divisible, {len(cs.irrational_list)} irrational"
        + (f", early verdict {early.reason.value}" if early else "")
    )
    return cs


def _v2(x: Fraction) -> int:
    """2-adic valuation of a nonzero rational"""
    num, den = x.numerator, x.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


def _residue(x: Fraction, modulus: int) -> int:
    """A rational with odd denominator viewed modulo a power of two"""
    if x.denominator % 2 == 0:
        raise CertificateError(f"{x} has an even denominator modulo {modulus}")
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def _verify_row_source(element: SignedFactored, basis: Sequence[SignedFactored], f: Sequence[Fraction], D: int) -> None:
    """|element|^D = prod |basis_i|^(D f_i) exactly"""
    lhs = SignedFactored(0, element.exponents) ** D
    rhs = product([SignedFactored(0, o.exponents) for o in basis], [int(c * D) for c in f])
    if lhs != rhs:
        raise CertificateError(f"span coordinates {f} do not reproduce |{element.origin}|")


@log_time
def build_system(cs: ConditionSet, mode: Mode = Mode.SIGN_EXTENDED) -> IncongruenceSystem:
    """
    Incongruence system of the condition set.

    M is the least positive integer making every 2^M f_i (and, in sign-extended
    mode, every offset 2^(M-1)(s_a - sum f_i s_i)) a rational with odd
    denominator. A row whose coefficients and offset all vanish is
    unsatisfiable.

    Raises:
        DomainError: the condition set already carries an early verdict
    """
    if cs.early_verdict is not None:
        raise DomainError(f"condition set has early verdict {cs.early_verdict.reason.value}; no system to build")
    mode = Mode.parse(mode)

    basis = [signed_factored(o) for o in cs.odd_list]
    members, b_members = [], []
    for e in cs.even_list:
        element = signed_factored(e)
        coords = express_in_span(element, basis)
        if coords is None:
            b_members.append(e)
            continue
        _verify_row_source(element, basis, coords.f, coords.denominator)
        members.append((e, coords))

    M = 1
    for _, coords in members:
        for c in coords.f:
            if c != 0:
                M = max(M, -_v2(c))
        if mode is Mode.SIGN_EXTENDED and coords.sign_defect != 0:
            M = max(M, 1 - _v2(coords.sign_defect))

    modulus = 1 << M
    rows = []
    for e, coords in members:
        coeffs = [_residue(c * modulus, modulus) for c in coords.f]
        offset = 0
        if mode is Mode.SIGN_EXTENDED:
            offset = _residue(coords.sign_defect * (modulus // 2), modulus)
        rows.append(Row(coeffs=coeffs, offset=offset, source=e))

    system = IncongruenceSystem(
        modulus_log2=M,
        num_vars=len(cs.odd_list),
        variables=list(cs.odd_list),
        rows=rows,
        mode=mode,
        a_members=[e for e, _ in members],
        b_members=b_members,
    )
    logger.info(f"system ({mode.value}): {len(rows)} rows over {system.num_vars} variables modulo 2^{M}")
    return system
