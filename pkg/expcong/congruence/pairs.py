"""
Pair Classification Module

Classifies a pair (a, b) by how b sits in the multiplicative group generated
by a, and evaluates at a single prime both the direct solvability of
a^x = b (mod p) and the order criterion attached to the pair's class.

Classes, in order of precedence:
    - trivial:  |a| <= 1, b in {0, 1}, or b = a^k (k >= 1)
    - odd:      b = -a^k (k >= 0)
    - irrational: a, b multiplicatively independent
    - even / strongly even: b^s = a^r resp. b^s = -a^r, s >= 2 a power of two
    - divisible: b^s = +-a^r, s >= 2 not a power of two

Version: 1.0.0
"""
from enum import Enum
from typing import Callable, Optional

from pydantic import BaseModel, ConfigDict

from ..core.exceptions import BadPrimeError, DependenceError
from ..core.logger import get_logger
from ..numtheory.arith import PrimePowers, check_magnitude, factorize, multiplicative_order
from ..numtheory.multgroup import SignCase, core_of

logger = get_logger(__name__)


class Variant(str, Enum):
    TRIVIAL = "trivial"
    IRRATIONAL = "irrational"
    ODD = "odd"
    DIVISIBLE = "divisible"
    EVEN = "even"
    STRONGLY_EVEN = "strongly_even"


class TrivialSubcase(str, Enum):
    ALWAYS_SOLVABLE = "always_solvable"
    EVENTUALLY_INSOLVABLE = "eventually_insolvable"


class PairClass(BaseModel):
    """Classification of (a, b); which optional fields are set depends on the variant"""
    model_config = ConfigDict(frozen=True)

    variant: Variant
    a: int
    b: int
    subcase: Optional[TrivialSubcase] = None
    k: Optional[int] = None
    core: Optional[int] = None
    r: Optional[int] = None
    s: Optional[int] = None
    q: Optional[int] = None
    sign_case: Optional[SignCase] = None

    @property
    def exact_criterion(self) -> bool:
        """Odd, even and strongly even criteria are equivalences; divisible is only sufficient"""
        return self.variant in (Variant.ODD, Variant.EVEN, Variant.STRONGLY_EVEN)

    @property
    def has_criterion(self) -> bool:
        return self.variant not in (Variant.TRIVIAL, Variant.IRRATIONAL)

    @property
    def order_base(self) -> Optional[int]:
        """The integer whose order the criterion looks at"""
        if self.variant is Variant.ODD:
            return self.a
        if self.variant is Variant.STRONGLY_EVEN:
            return self.core * self.core
        if self.variant in (Variant.EVEN, Variant.DIVISIBLE):
            return self.core
        return None

    def summary(self) -> dict:
        return self.model_dump(mode="json", exclude_none=True)


def _power_exponent(a: int, b: int, negate: bool, start: int) -> Optional[int]:
    """Least k >= start with b = a^k (or b = -a^k when negate), for |a| >= 2"""
    target = -b if negate else b
    t = a ** start
    k = start
    while abs(t) <= abs(target):
        if t == target:
            return k
        t *= a
        k += 1
    return None


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _least_odd_prime_factor(n: int) -> int:
    return next(p for p, _ in factorize(n).factors if p != 2)


def _trivial_subcase(a: int, b: int) -> tuple:
    """(subcase, k) for a trivial pair"""
    if b == 1:
        return TrivialSubcase.ALWAYS_SOLVABLE, 0
    if (a, b) in ((-1, -1), (0, 0), (1, 1)):
        return TrivialSubcase.ALWAYS_SOLVABLE, 1
    if abs(a) >= 2 and b != 0:
        k = _power_exponent(a, b, negate=False, start=1)
        if k is not None:
            return TrivialSubcase.ALWAYS_SOLVABLE, k
    return TrivialSubcase.EVENTUALLY_INSOLVABLE, None


def classify_pair(a: int, b: int) -> PairClass:
    """
    Classify the pair (a, b).

    Examples:
        >>> classify_pair(4, 2).variant
        <Variant.EVEN: 'even'>
        >>> classify_pair(2, -4).k
        2
    """
    check_magnitude(a, "a")
    check_magnitude(b, "b")

    if abs(a) <= 1 or b in (0, 1) or _power_exponent(a, b, negate=False, start=1) is not None:
        subcase, k = _trivial_subcase(a, b)
        return PairClass(variant=Variant.TRIVIAL, a=a, b=b, subcase=subcase, k=k)

    k = _power_exponent(a, b, negate=True, start=0)
    if k is not None:
        return PairClass(variant=Variant.ODD, a=a, b=b, k=k)

    try:
        core = core_of(a, b)
    except DependenceError:
        return PairClass(variant=Variant.IRRATIONAL, a=a, b=b)
    fields = dict(a=a, b=b, core=core.c, r=core.r, s=core.s, sign_case=core.sign_case)
    if not _is_power_of_two(core.s):
        return PairClass(variant=Variant.DIVISIBLE, q=_least_odd_prime_factor(core.s), **fields)
    if core.sign_case is SignCase.PLUS:
        return PairClass(variant=Variant.EVEN, **fields)
    return PairClass(variant=Variant.STRONGLY_EVEN, **fields)


OrderFn = Callable[[int], int]


def _check_prime(p: int, *values: int) -> None:
    if p == 2:
        raise BadPrimeError("p = 2 is excluded")
    for v in values:
        if v % p == 0:
            raise BadPrimeError(f"p = {p} divides {v}")


def _order_fn(p: int, p_minus_1: Optional[PrimePowers], order: Optional[OrderFn]) -> OrderFn:
    if order is not None:
        return order
    return lambda x: multiplicative_order(x, p, p_minus_1)


def solvable_at(
    p: int,
    a: int,
    b: int,
    p_minus_1: Optional[PrimePowers] = None,
    order: Optional[OrderFn] = None,
) -> bool:
    """
    Whether a^x = b (mod p) has a solution x >= 0, via ord_p(b) | ord_p(a).

    order, when given, computes ord_p (the scanner passes a memo shared by
    all pairs at one prime); otherwise orders use p_minus_1 if known.

    Raises:
        BadPrimeError: p = 2 or p | ab
    """
    _check_prime(p, a, b)
    ord_p = _order_fn(p, p_minus_1, order)
    return ord_p(a) % ord_p(b) == 0


def criterion_at(
    p: int,
    pc: PairClass,
    p_minus_1: Optional[PrimePowers] = None,
    order: Optional[OrderFn] = None,
) -> Optional[bool]:
    """
    Insolvability predicted by the order criterion of the pair's class.

    Odd, even and strongly even pairs give an exact answer; for divisible pairs
    True means insolvable but False decides nothing (see PairClass.exact_criterion).
    Trivial and irrational pairs have no criterion and give None.

    Raises:
        BadPrimeError: p = 2 or p | ab, for pairs with a criterion
    """
    if not pc.has_criterion:
        return None
    _check_prime(p, pc.a, pc.b)
    value = _order_fn(p, p_minus_1, order)(pc.order_base)
    if pc.variant is Variant.ODD:
        return value % 2 == 1
    if pc.variant is Variant.DIVISIBLE:
        return value % pc.q == 0
    return value % 2 == 0


def direct_insolvable(
    p: int,
    a: int,
    b: int,
    p_minus_1: Optional[PrimePowers] = None,
    order: Optional[OrderFn] = None,
) -> bool:
    """
    Ground-truth insolvability of a^x = b (mod p) for odd p, with x >= 0 and a^0 = 1.

    Unlike solvable_at this accepts residues 0 (only trivial pairs produce them).
    """
    a %= p
    b %= p
    if a == 0:
        return b not in (0, 1)
    if b == 0:
        return True
    return not solvable_at(p, a, b, p_minus_1, order)
