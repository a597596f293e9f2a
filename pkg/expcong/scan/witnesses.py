"""
Order Witness Mining

Finds primes satisfying divisibility, indivisibility and gcd conditions on
multiplicative orders, and checks two things empirically on every scanned
prime: that a gcd condition holds exactly when all of its per-prime blocks
hold, and that a divisibility requirement m | ord_p(a) (a > 0) holds exactly
when every congruence of its encoding is insolvable.

Version: 1.0.0
"""
from math import gcd
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from ..config import FIRST_MATCHES, PRIME_RANGE_CAP
from ..core.exceptions import ValidationError
from ..core.logger import get_logger, log_time
from ..numtheory.arith import base_primes, factor_with_primes, iter_prime_segments
from ..congruence.decide import OrderConditions, decide_divisibility, decide_indivisibility, split_gcd
from .scanner import Discrepancy, PrimeOrders

logger = get_logger(__name__)


class WitnessTally(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    q: Optional[int] = None
    count: int
    first: List[int]


class WitnessReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    range: Tuple[int, int]
    primes_scanned: int
    bad_primes_skipped: int
    divisibility: Optional[WitnessTally] = None
    indivisibility: Optional[WitnessTally] = None
    gcd: Optional[WitnessTally] = None
    gcd_blocks: List[WitnessTally] = []
    discrepancies: List[Discrepancy] = []


class _Counter:
    def __init__(self, kind: str, limit: int, q: Optional[int] = None):
        self.kind, self.limit, self.q = kind, limit, q
        self.count = 0
        self.first: List[int] = []

    def add(self, p: int) -> None:
        self.count += 1
        if len(self.first) < self.limit:
            self.first.append(p)

    def tally(self) -> WitnessTally:
        return WitnessTally(kind=self.kind, q=self.q, count=self.count, first=self.first)


@log_time
def mine_order_witnesses(conditions: OrderConditions, lo: int, hi: int, limit: int = FIRST_MATCHES) -> WitnessReport:
    """
    Primes p in [lo, hi) satisfying each kind of order condition.

    Primes dividing 2 or any base are skipped. For each kind present the
    report holds the count and the first `limit` primes.

    Examples:
        divisibility [(2, 12)] is first met at p = 13; indivisibility q = 2
        with bases [2, 3] at p = 23.
    """
    if lo > hi:
        raise ValidationError(f"empty range: lo = {lo} > hi = {hi}")
    if hi > PRIME_RANGE_CAP:
        raise ValidationError(f"hi = {hi} exceeds the enumeration bound 2^40")

    bases = [a for a in conditions.bases() if a != 0]
    encoded = []
    if conditions.divisibility:
        result = decide_divisibility(conditions.divisibility)
        encoded = [(r.m, r.a, [e.pair for e in r.encoded]) for r in result.requirements if r.a > 0]
        encoded = [(m, a, pairs) for m, a, pairs in encoded if all(pair is not None for pair in pairs)]
    blocks = split_gcd(conditions.gcd).blocks if conditions.gcd else []
    indiv = conditions.indivisibility
    if indiv is not None:
        decide_indivisibility(indiv.q, indiv.bases)

    div_counter = _Counter("divisibility", limit) if conditions.divisibility else None
    indiv_counter = _Counter("indivisibility", limit, q=indiv.q) if indiv else None
    gcd_counter = _Counter("gcd", limit) if conditions.gcd else None
    block_counters = [_Counter("gcd_block", limit, q=b.q) for b in blocks]
    discrepancies: List[Discrepancy] = []

    sieving = base_primes(hi)
    scanned = skipped = 0
    for segment in iter_prime_segments(lo, hi):
        for p in segment:
            if p == 2 or any(a % p == 0 for a in bases):
                skipped += 1
                continue
            scanned += 1
            orders = PrimeOrders(p, factor_with_primes(p - 1, sieving))

            if div_counter is not None:
                if all(orders(a) % m == 0 for a, m in conditions.divisibility):
                    div_counter.add(p)
                for m, a, pairs in encoded:
                    holds = orders(a) % m == 0
                    if holds != all(orders.insolvable(x, y) for x, y in pairs):
                        discrepancies.append(
                            Discrepancy(p=p, kind="divisibility_encoding", description=f"{m} | ord({a}) is {holds} but the encoding disagrees")
                        )

            if indiv_counter is not None and all(orders(a) % indiv.q != 0 for a in indiv.bases):
                indiv_counter.add(p)

            if gcd_counter is not None:
                whole = all(gcd(orders(a), m) == g for a, g, m in conditions.gcd)
                parts = True
                for block, counter in zip(blocks, block_counters):
                    if all(gcd(orders(c.a), c.modulus) == c.target for c in block.conditions):
                        counter.add(p)
                    else:
                        parts = False
                if whole:
                    gcd_counter.add(p)
                if whole != parts:
                    discrepancies.append(
                        Discrepancy(p=p, kind="gcd_split", description=f"gcd conditions {whole}, per-prime blocks {parts}")
                    )

    report = WitnessReport(
        range=(lo, hi),
        primes_scanned=scanned,
        bad_primes_skipped=skipped,
        divisibility=div_counter.tally() if div_counter else None,
        indivisibility=indiv_counter.tally() if indiv_counter else None,
        gcd=gcd_counter.tally() if gcd_counter else None,
        gcd_blocks=[c.tally() for c in block_counters],
        discrepancies=discrepancies,
    )
    logger.info(f"witness mining over [{lo}, {hi}): {scanned} primes, {len(discrepancies)} discrepancies")
    return report
