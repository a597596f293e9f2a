"""
Insolvability Service Module

This module provides the service object behind the command-line front end.
It is responsible for:
    - Classifying pairs
    - Producing verdicts (with the other mode solved for comparison)
    - Scanning prime ranges, optionally checking a verdict against the scan
    - Deciding order conditions and mining witnesses for them
    - Running the self-check suite

Every method returns a pydantic model; serialization is the caller's job.

Version: 1.0.0
"""
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..config import FINITE_FLOOR, FIRST_MATCHES, SCAN_CHUNK, SCAN_WORKERS, SEED, SOLVER_CAP
from ..congruence.decide import (
    DivisibilityResult,
    GcdSplit,
    IndivisibilityResult,
    OrderConditions,
    Verdict,
    decide,
    decide_divisibility,
    decide_indivisibility,
    split_gcd,
)
from ..congruence.pairs import PairClass, classify_pair
from ..congruence.reduction import Mode, build_conditions
from ..scan.scanner import ScanReport, scan, with_verdict
from ..scan.witnesses import WitnessReport, mine_order_witnesses
from ..utils.utils import validate_mode, validate_range, validate_workers
from .cache import factor_cache
from .exceptions import ValidationError
from .logger import get_logger, log_time
from .selfcheck import SelfCheckReport, run_selfcheck

logger = get_logger(__name__)


class OrdersResult(BaseModel):
    """Decider output for one kind of order condition, plus optional witnesses"""
    model_config = ConfigDict(frozen=True)

    kind: str
    divisibility: Optional[DivisibilityResult] = None
    indivisibility: Optional[IndivisibilityResult] = None
    gcd: Optional[GcdSplit] = None
    witnesses: Optional[WitnessReport] = None


class InsolvabilityService:
    """Insolvability service - orchestrates classification, decisions, scans and self-checks"""

    def __init__(
        self,
        solver_cap: int = SOLVER_CAP,
        seed: int = SEED,
        workers: int = SCAN_WORKERS,
        chunk_size: int = SCAN_CHUNK,
        first_limit: int = FIRST_MATCHES,
        floor: int = FINITE_FLOOR,
    ):
        self.solver_cap = solver_cap
        self.seed = seed
        self.workers = validate_workers(workers)
        self.chunk_size = chunk_size
        self.first_limit = first_limit
        self.floor = floor
        logger.debug(f"Service initialized: cap={solver_cap}, seed={seed}, workers={workers}")

    def classify(self, a: int, b: int) -> PairClass:
        pc = classify_pair(a, b)
        logger.info(f"({a}, {b}) is {pc.variant.value}")
        return pc

    @log_time
    def decide(self, pairs: Sequence[Tuple[int, int]], mode: str = None) -> Verdict:
        """
        Verdict in the requested mode (default from config); the other mode is
        solved as well and reported through modes_agree.
        """
        mode = Mode(validate_mode(mode)) if mode else None
        verdict = decide(pairs, mode=mode, cap=self.solver_cap, seed=self.seed)
        logger.debug(f"cache stats: {factor_cache.get_stats()}")
        return verdict

    @log_time
    def scan(
        self,
        pairs: Sequence[Tuple[int, int]],
        lo: int,
        hi: int,
        with_verdict_check: bool = False,
        mode: str = None,
    ) -> ScanReport:
        """
        Scan [lo, hi). With with_verdict_check the verdict is attached and
        report.consistent tells whether verdict and scan agree.
        """
        lo, hi = validate_range(lo, hi)
        cs = build_conditions(pairs)
        report = scan(
            pairs,
            cs,
            lo,
            hi,
            workers=self.workers,
            chunk_size=self.chunk_size,
            first_limit=self.first_limit,
            floor=self.floor,
        )
        if with_verdict_check:
            report = with_verdict(report, self.decide(pairs, mode))
        return report

    @log_time
    def orders(self, kind: str, conditions: OrderConditions, witness_range: Optional[Tuple[int, int]] = None) -> OrdersResult:
        """
        Run the decider for kind ('div', 'indiv' or 'gcd') and, given a
        range, mine witnesses for the same conditions.
        """
        if kind == "div":
            if not conditions.divisibility:
                raise ValidationError("order_conditions.divisibility is empty")
            result = OrdersResult(kind=kind, divisibility=decide_divisibility(conditions.divisibility))
            selected = OrderConditions(divisibility=conditions.divisibility)
        elif kind == "indiv":
            spec = conditions.indivisibility
            if spec is None:
                raise ValidationError("order_conditions.indivisibility is missing")
            result = OrdersResult(kind=kind, indivisibility=decide_indivisibility(spec.q, spec.bases))
            selected = OrderConditions(indivisibility=spec)
        elif kind == "gcd":
            if not conditions.gcd:
                raise ValidationError("order_conditions.gcd is empty")
            result = OrdersResult(kind=kind, gcd=split_gcd(conditions.gcd))
            selected = OrderConditions(gcd=conditions.gcd)
        else:
            raise ValidationError(f"unknown order condition kind '{kind}'")

        if witness_range is not None:
            lo, hi = validate_range(*witness_range)
            witnesses = mine_order_witnesses(selected, lo, hi, self.first_limit)
            result = result.model_copy(update={"witnesses": witnesses})
        return result

    @log_time
    def selfcheck(self, limit: int, samples: int = 1000) -> SelfCheckReport:
        report = run_selfcheck(limit=limit, samples=samples, seed=self.seed)
        if not report.passed:
            failed: List[str] = [c.name for c in report.checks if not c.passed]
            logger.warning(f"⚠️ selfcheck failed: {', '.join(failed)}")
        return report
