"""
Prime Scanner Module

Empirical ground truth for verdicts and order criteria. For every prime in a
range (bad primes skipped and counted) the scanner factors p - 1 once,
computes the needed orders, and evaluates:
    - direct insolvability of every pair (ground truth)
    - the reduced condition set (odd basis, even list, divisible and
      irrational entries)
    - per-pair criterion/direct agreement, and the odd-basis equivalence

Work is split into fixed-size integer chunks evaluated by a pure top-level
function (so it pickles for a process pool) and merged in chunk order, which
makes reports independent of the chunk size and worker count.

Version: 1.0.0
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..config import FINITE_FLOOR, FIRST_MATCHES, PRIME_RANGE_CAP, SCAN_CHUNK, SCAN_WORKERS
from ..core.exceptions import BadPrimeError, DomainError, ValidationError
from ..core.logger import get_logger, log_time
from ..numtheory.arith import (
    PrimePowers,
    base_primes,
    factor_with_primes,
    factorize,
    is_prime,
    iter_prime_segments,
    multiplicative_order,
)
from ..congruence.decide import Outcome, Verdict
from ..congruence.pairs import PairClass, TrivialSubcase, Variant, criterion_at, direct_insolvable
from ..congruence.reduction import ConditionSet, EarlyReason, build_conditions

logger = get_logger(__name__)

CONDITION_KEYS = ("odd", "even", "divisible", "irrational", "eventually_insolvable")


# ============================================================================
# PER-PRIME EVALUATION
# ============================================================================

class PrimeOrders:
    """Orders modulo one prime, sharing the factorization of p - 1"""

    def __init__(self, p: int, p_minus_1: PrimePowers):
        self.p = p
        self.p_minus_1 = p_minus_1
        self._memo: Dict[int, int] = {}

    def __call__(self, x: int) -> int:
        x %= self.p
        order = self._memo.get(x)
        if order is None:
            order = multiplicative_order(x, self.p, self.p_minus_1)
            self._memo[x] = order
        return order

    def insolvable(self, a: int, b: int) -> bool:
        """a^x = b (mod p) has no solution x >= 0"""
        return direct_insolvable(self.p, a, b, order=self)


def _relation(pc: PairClass) -> str:
    if pc.exact_criterion or (pc.variant is Variant.TRIVIAL and pc.subcase is TrivialSubcase.ALWAYS_SOLVABLE):
        return "equivalence"
    if pc.variant is Variant.DIVISIBLE:
        return "implication"
    return "none"


def _pair_fails(pc: PairClass, criterion: Optional[bool], direct: bool) -> bool:
    relation = _relation(pc)
    if relation == "implication":
        return bool(criterion) and not direct
    if relation == "equivalence":
        expected = False if pc.variant is Variant.TRIVIAL else criterion
        return expected != direct
    return False


class PairCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    variant: Variant
    relation: str
    criterion: Optional[bool] = None
    direct_insolvable: bool
    passed: bool


class CrossCheck(BaseModel):
    """Criterion versus direct solvability for every pair at one prime"""
    model_config = ConfigDict(frozen=True)

    p: int
    passed: bool
    pairs: List[PairCheck]

    @property
    def failures(self) -> List[PairCheck]:
        return [c for c in self.pairs if not c.passed]


def check_pair(orders: PrimeOrders, pc: PairClass) -> Tuple[Optional[bool], bool, bool]:
    """(criterion, direct insolvability, agreement) for one pair at the prime of `orders`"""
    criterion = criterion_at(orders.p, pc, order=orders)
    direct = orders.insolvable(pc.a, pc.b)
    return criterion, direct, not _pair_fails(pc, criterion, direct)


def _is_bad(p: int, pairs: Sequence[Tuple[int, int]]) -> bool:
    return p == 2 or any(v != 0 and v % p == 0 for pair in pairs for v in pair)


def cross_check(
    p: int,
    pairs: Sequence[Tuple[int, int]],
    cs: Optional[ConditionSet] = None,
    p_minus_1: Optional[PrimePowers] = None,
) -> CrossCheck:
    """
    Direction-aware comparison of each pair's criterion with direct solvability.

    Odd, even and strongly even criteria must equal direct insolvability and
    always-solvable trivial pairs must be solvable; a divisible criterion may
    only fire when the congruence is insolvable. Irrational and
    eventually-insolvable trivial pairs carry no check.

    Raises:
        DomainError: p is not a prime
        BadPrimeError: p = 2 or p divides some nonzero entry
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not a prime")
    if _is_bad(p, pairs):
        raise BadPrimeError(f"p = {p} is a bad prime for these pairs")
    cs = cs or build_conditions(pairs)
    orders = PrimeOrders(p, p_minus_1 if p_minus_1 is not None else factorize(p - 1).factors)
    checks = []
    for pc in cs.classes:
        criterion, direct, passed = check_pair(orders, pc)
        checks.append(
            PairCheck(
                a=pc.a,
                b=pc.b,
                variant=pc.variant,
                relation=_relation(pc),
                criterion=criterion,
                direct_insolvable=direct,
                passed=passed,
            )
        )
    return CrossCheck(p=p, passed=all(c.passed for c in checks), pairs=checks)


# ============================================================================
# SCAN PLAN AND CHUNKS
# ============================================================================

@dataclass(frozen=True)
class ScanPlan:
    """Read-only inputs shared by every chunk"""
    classes: Tuple[PairClass, ...]
    odd_originals: Tuple[int, ...]
    odd_basis: Tuple[int, ...]
    check_odd_basis: bool
    even: Tuple[int, ...]
    divisible: Tuple[Tuple[int, int], ...]
    irrational: Tuple[Tuple[int, int], ...]
    eventually: Tuple[Tuple[int, int], ...]
    never: bool
    exact: bool
    bad_primes: FrozenSet[int]
    first_limit: int
    floor: int

    @classmethod
    def from_conditions(cls, cs: ConditionSet, first_limit: int, floor: int) -> "ScanPlan":
        early = cs.early_verdict.reason if cs.early_verdict else None
        return cls(
            classes=tuple(cs.classes),
            odd_originals=tuple(cs.odd_originals),
            odd_basis=tuple(cs.odd_list),
            check_odd_basis=early is not EarlyReason.MINUS_ONE_PRODUCT and bool(cs.odd_originals),
            even=tuple(cs.even_list),
            divisible=tuple((d.core, d.q) for d in cs.divisible_list),
            irrational=tuple(cs.irrational_list),
            eventually=tuple(cs.eventually_insolvable),
            never=early is EarlyReason.TRIVIAL_ALWAYS_SOLVABLE,
            exact=not cs.divisible_list,
            bad_primes=frozenset(cs.bad_primes),
            first_limit=first_limit,
            floor=floor,
        )

    def condition_keys(self) -> List[str]:
        present = {
            "odd": bool(self.odd_basis),
            "even": bool(self.even),
            "divisible": bool(self.divisible),
            "irrational": bool(self.irrational),
            "eventually_insolvable": bool(self.eventually),
        }
        return [key for key in CONDITION_KEYS if present[key]]


@dataclass
class ChunkTally:
    """Counts for a contiguous range; merge() is associative"""
    primes_scanned: int = 0
    bad_primes_skipped: int = 0
    matching: int = 0
    condition_matching: int = 0
    matching_from_floor: int = 0
    first_matches: List[int] = field(default_factory=list)
    per_condition: Dict[str, int] = field(default_factory=dict)
    per_pair: List[int] = field(default_factory=list)
    by_k: Dict[int, List[int]] = field(default_factory=dict)
    discrepancies: List[Tuple[int, str, str]] = field(default_factory=list)

    def merge(self, other: "ChunkTally", first_limit: int) -> None:
        self.primes_scanned += other.primes_scanned
        self.bad_primes_skipped += other.bad_primes_skipped
        self.matching += other.matching
        self.condition_matching += other.condition_matching
        self.matching_from_floor += other.matching_from_floor
        self.first_matches = (self.first_matches + other.first_matches)[:first_limit]
        for key, count in other.per_condition.items():
            self.per_condition[key] = self.per_condition.get(key, 0) + count
        if not self.per_pair:
            self.per_pair = [0] * len(other.per_pair)
        self.per_pair = [x + y for x, y in zip(self.per_pair, other.per_pair)]
        for k, (scanned, matching) in other.by_k.items():
            tally = self.by_k.setdefault(k, [0, 0])
            tally[0] += scanned
            tally[1] += matching
        self.discrepancies.extend(other.discrepancies)


def _conditions_at(plan: ScanPlan, orders: PrimeOrders) -> Dict[str, bool]:
    values = {}
    if plan.odd_basis:
        values["odd"] = all(orders(o) % 2 == 1 for o in plan.odd_basis)
    if plan.even:
        values["even"] = all(orders(e) % 2 == 0 for e in plan.even)
    if plan.divisible:
        values["divisible"] = all(orders(c) % q == 0 for c, q in plan.divisible)
    if plan.irrational:
        values["irrational"] = all(orders.insolvable(a, b) for a, b in plan.irrational)
    if plan.eventually:
        values["eventually_insolvable"] = all(orders.insolvable(a, b) for a, b in plan.eventually)
    return values


def scan_chunk(plan: ScanPlan, lo: int, hi: int, sieving: Sequence[int]) -> ChunkTally:
    """Evaluate every prime of [lo, hi); pure, so chunks may run in any process"""
    tally = ChunkTally(per_condition={key: 0 for key in plan.condition_keys()}, per_pair=[0] * len(plan.classes))
    for segment in iter_prime_segments(lo, hi, max(hi - lo, 1)):
        for p in segment:
            if p in plan.bad_primes:
                tally.bad_primes_skipped += 1
                continue
            p_minus_1 = factor_with_primes(p - 1, sieving)
            orders = PrimeOrders(p, p_minus_1)
            tally.primes_scanned += 1

            direct = []
            for i, pc in enumerate(plan.classes):
                criterion, insolvable, agrees = check_pair(orders, pc)
                direct.append(insolvable)
                if insolvable:
                    tally.per_pair[i] += 1
                if not agrees:
                    tally.discrepancies.append(
                        (p, "criterion", f"({pc.a}, {pc.b}) {pc.variant.value}: criterion {criterion}, direct insolvable {insolvable}")
                    )
            matched = all(direct)

            values = _conditions_at(plan, orders)
            for key, holds in values.items():
                if holds:
                    tally.per_condition[key] += 1
            condition = not plan.never and all(values.values())

            if plan.check_odd_basis:
                originals_odd = all(orders(o) % 2 == 1 for o in plan.odd_originals)
                if originals_odd != values["odd"]:
                    tally.discrepancies.append(
                        (p, "odd_basis", f"original odd list {originals_odd}, odd basis {values['odd']}")
                    )
            if condition and not matched:
                tally.discrepancies.append((p, "condition", "reduced conditions hold but some congruence is solvable"))
            elif plan.exact and matched and not condition:
                tally.discrepancies.append((p, "condition", "every congruence is insolvable but the reduced conditions fail"))

            k = p_minus_1[0][1]
            stratum = tally.by_k.setdefault(k, [0, 0])
            stratum[0] += 1
            if matched:
                stratum[1] += 1
                tally.matching += 1
                if p >= plan.floor:
                    tally.matching_from_floor += 1
                if len(tally.first_matches) < plan.first_limit:
                    tally.first_matches.append(p)
            if condition:
                tally.condition_matching += 1
    return tally


def _scan_chunk_job(args) -> ChunkTally:
    return scan_chunk(*args)


# ============================================================================
# REPORT
# ============================================================================

class ConditionTally(BaseModel):
    model_config = ConfigDict(frozen=True)

    condition: str
    count: int


class PairTally(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    variant: Variant
    insolvable_count: int


class TwoAdicTally(BaseModel):
    """Primes with v_2(p - 1) = k"""
    model_config = ConfigDict(frozen=True)

    k: int
    scanned: int
    matching: int


class Discrepancy(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: Optional[int] = None
    kind: str
    description: str


class ScanReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    range: Tuple[int, int]
    primes_scanned: int
    bad_primes_skipped: int
    matching_count: int
    condition_match_count: int
    first_matches: List[int]
    density_estimate: float
    finite_floor: int
    matching_from_floor: int
    per_condition: List[ConditionTally]
    per_pair: List[PairTally]
    by_two_adic_valuation: List[TwoAdicTally]
    discrepancies: List[Discrepancy]
    verdict_outcome: Optional[Outcome] = None
    verdict_mode: Optional[str] = None
    consistent: Optional[bool] = None


def _chunks(lo: int, hi: int, size: int) -> List[Tuple[int, int]]:
    return [(start, min(start + size, hi)) for start in range(lo, hi, size)]


@log_time
def scan(
    pairs: Sequence[Tuple[int, int]],
    cs: Optional[ConditionSet] = None,
    lo: int = 3,
    hi: int = 10 ** 4,
    workers: int = SCAN_WORKERS,
    chunk_size: int = SCAN_CHUNK,
    first_limit: int = FIRST_MATCHES,
    floor: int = FINITE_FLOOR,
) -> ScanReport:
    """
    Scan the primes of [lo, hi) for the given pairs.

    matching_count counts primes where every congruence is insolvable (direct
    test); condition_match_count those where the reduced condition set holds.
    Any exact criterion that disagrees with the direct test is recorded in
    discrepancies.

    Raises:
        ValidationError: lo > hi, hi above 2^40, or non-positive workers/chunk size
    """
    if lo > hi:
        raise ValidationError(f"empty range: lo = {lo} > hi = {hi}")
    if hi > PRIME_RANGE_CAP:
        raise ValidationError(f"hi = {hi} exceeds the enumeration bound 2^40")
    if workers < 1 or chunk_size < 1:
        raise ValidationError("workers and chunk size must be positive")

    cs = cs or build_conditions(pairs)
    plan = ScanPlan.from_conditions(cs, first_limit, floor)
    sieving = base_primes(hi)
    jobs = [(plan, a, b, sieving) for a, b in _chunks(max(lo, 2), hi, chunk_size)]
    logger.info(f"scanning [{lo}, {hi}) in {len(jobs)} chunks with {workers} worker(s)")

    total = ChunkTally(per_condition={key: 0 for key in plan.condition_keys()}, per_pair=[0] * len(plan.classes))
    if workers == 1 or len(jobs) <= 1:
        results = map(_scan_chunk_job, jobs)
        for i, tally in enumerate(results):
            total.merge(tally, first_limit)
            logger.debug(f"chunk {i + 1}/{len(jobs)} done: {total.primes_scanned} primes so far")
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, tally in enumerate(pool.map(_scan_chunk_job, jobs)):
                total.merge(tally, first_limit)
                logger.debug(f"chunk {i + 1}/{len(jobs)} done: {total.primes_scanned} primes so far")

    discrepancies = [Discrepancy(p=p, kind=kind, description=text) for p, kind, text in total.discrepancies]
    report = ScanReport(
        range=(lo, hi),
        primes_scanned=total.primes_scanned,
        bad_primes_skipped=total.bad_primes_skipped,
        matching_count=total.matching,
        condition_match_count=total.condition_matching,
        first_matches=total.first_matches,
        density_estimate=total.matching / total.primes_scanned if total.primes_scanned else 0.0,
        finite_floor=floor,
        matching_from_floor=total.matching_from_floor,
        per_condition=[ConditionTally(condition=key, count=count) for key, count in total.per_condition.items()],
        per_pair=[
            PairTally(a=pc.a, b=pc.b, variant=pc.variant, insolvable_count=count)
            for pc, count in zip(plan.classes, total.per_pair)
        ],
        by_two_adic_valuation=[
            TwoAdicTally(k=k, scanned=scanned, matching=matching) for k, (scanned, matching) in sorted(total.by_k.items())
        ],
        discrepancies=discrepancies,
    )
    logger.info(
        f"scan finished: {report.primes_scanned} primes, {report.matching_count} matching, "
        f"{report.condition_match_count} by conditions, {len(discrepancies)} discrepancies"
    )
    if discrepancies:
        logger.warning(f"⚠️ {len(discrepancies)} discrepancies, first at p = {discrepancies[0].p}")
    return report


# ============================================================================
# VERDICT CONSISTENCY
# ============================================================================

def verdict_consistency(verdict: Verdict, report: ScanReport) -> List[Discrepancy]:
    """
    Compare a verdict with the direct matches of a scan.

    A finite or never verdict is contradicted by any match at p >= the
    report's floor; an infinite verdict with no match at all is flagged
    missing_match.
    """
    found = []
    if verdict.outcome in (Outcome.FINITE, Outcome.NEVER) and report.matching_from_floor:
        late = [p for p in report.first_matches if p >= report.finite_floor]
        found.append(
            Discrepancy(
                p=late[0] if late else None,
                kind="finite_verdict_match",
                description=f"{verdict.outcome.value} verdict but {report.matching_from_floor} matching primes >= {report.finite_floor}",
            )
        )
    if verdict.outcome is Outcome.INFINITE and report.matching_count == 0:
        found.append(
            Discrepancy(kind="missing_match", description=f"infinite verdict but no matching prime in [{report.range[0]}, {report.range[1]})")
        )
    return found


def with_verdict(report: ScanReport, verdict: Verdict) -> ScanReport:
    """The report annotated with the verdict and its consistency"""
    found = verdict_consistency(verdict, report)
    for d in found:
        logger.warning(f"⚠️ verdict/scan inconsistency: {d.description}")
    return report.model_copy(
        update={
            "discrepancies": report.discrepancies + found,
            "verdict_outcome": verdict.outcome,
            "verdict_mode": verdict.mode.value,
            "consistent": not found and not report.discrepancies,
        }
    )
