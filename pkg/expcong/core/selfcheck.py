"""
Self-Check Suite

Seeded, deterministic consistency checks of the library against ground truth
and brute-force oracles:
    - lemma_equivalence: per-pair criteria against direct solvability for a
      corpus of odd, even, strongly even, divisible and trivial pairs
    - solvability_oracle: the order test for a^x = b against exponent search
    - odd_basis_properties: independence and odd certificates on random sets
    - minus_one_bruteforce: the -1 product test against bounded search
    - solver_oracle: solve_system against itertools enumeration

Version: 1.0.0
"""
import itertools
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..config import SEED, get_config_summary
from ..congruence.decide import solve_system
from ..congruence.pairs import PairClass, TrivialSubcase, Variant, classify_pair, solvable_at
from ..congruence.reduction import IncongruenceSystem, Mode, Row
from ..numtheory.arith import base_primes, factor_with_primes, primes_in
from ..numtheory.multgroup import (
    MINUS_ONE,
    check_independent,
    has_minus_one_product,
    odd_basis,
    product,
    signed_factored,
)
from ..scan.scanner import PrimeOrders, check_pair
from .exceptions import CertificateError, DependenceError
from .logger import get_logger, log_time

logger = get_logger(__name__)

MAX_EXAMPLES = 10
CORPUS_PER_VARIANT = 60


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    checked: int
    failures: int
    inconclusive: int = 0
    examples: List[str] = []

    @property
    def passed(self) -> bool:
        return self.failures == 0


class SelfCheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    limit: int
    seed: int
    samples: int
    passed: bool
    checks: List[CheckResult]
    config: Dict


class _Recorder:
    def __init__(self, name: str):
        self.name = name
        self.checked = self.failures = self.inconclusive = 0
        self.examples: List[str] = []

    def check(self, ok: bool, describe: Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < MAX_EXAMPLES:
                self.examples.append(describe())

    def result(self) -> CheckResult:
        level = logger.warning if self.failures else logger.info
        level(f"selfcheck {self.name}: {self.checked} checked, {self.failures} failures")
        return CheckResult(
            name=self.name,
            checked=self.checked,
            failures=self.failures,
            inconclusive=self.inconclusive,
            examples=self.examples,
        )


# ============================================================================
# PAIR CORPUS
# ============================================================================

def pair_corpus(per_variant: int = CORPUS_PER_VARIANT) -> Dict[Variant, List[PairClass]]:
    """Deterministic corpus of classified pairs, bucketed by variant"""
    buckets: Dict[Variant, List[PairClass]] = {v: [] for v in Variant}

    def offer(a: int, b: int) -> None:
        pc = classify_pair(a, b)
        bucket = buckets[pc.variant]
        if pc.variant is Variant.TRIVIAL and pc.subcase is not TrivialSubcase.ALWAYS_SOLVABLE:
            return
        if len(bucket) < per_variant and all((x.a, x.b) != (a, b) for x in bucket):
            bucket.append(pc)

    bases = [c for n in range(2, 13) for c in (n, -n)]
    for a in bases:
        for k in range(4):
            if abs(a) ** k <= 10 ** 4:
                offer(a, -(a ** k))
                if k:
                    offer(a, a ** k)
    for c in bases:
        for s in (2, 4, 3, 5, 6):
            for r in (1, 3, 5, 7):
                if r == s or gcd(r, s) != 1 or abs(c) ** max(r, s) > 10 ** 6:
                    continue
                offer(c ** s, c ** r)
                offer(-(c ** s), c ** r)
    return {v: pcs for v, pcs in buckets.items() if v is not Variant.IRRATIONAL}


# ============================================================================
# CHECKS
# ============================================================================

@log_time
def lemma_equivalence(limit: int, corpus: Optional[Dict[Variant, List[PairClass]]] = None) -> CheckResult:
    """Every corpus pair at every prime below limit that does not divide 2ab"""
    recorder = _Recorder("lemma_equivalence")
    corpus = corpus if corpus is not None else pair_corpus()
    classes = [pc for pcs in corpus.values() for pc in pcs]
    sieving = base_primes(limit)
    for p in primes_in(3, limit):
        orders = PrimeOrders(p, factor_with_primes(p - 1, sieving))
        for pc in classes:
            if pc.a % p == 0 or (pc.b != 0 and pc.b % p == 0):
                continue
            criterion, direct, agrees = check_pair(orders, pc)
            recorder.check(agrees, lambda: f"p={p} ({pc.a}, {pc.b}) {pc.variant.value}: criterion {criterion}, direct {direct}")
    return recorder.result()


@log_time
def solvability_oracle(limit: int, bound: int = 30) -> CheckResult:
    """solvable_at against the set of powers a^0, a^1, ... modulo p"""
    recorder = _Recorder("solvability_oracle")
    values = [v for v in range(-bound, bound + 1) if v != 0]
    for p in primes_in(3, limit):
        for a in values:
            if a % p == 0:
                continue
            powers, x = set(), 1
            while True:
                powers.add(x)
                x = x * a % p
                if x in powers:
                    break
            for b in values:
                if b % p == 0:
                    continue
                recorder.check(
                    solvable_at(p, a, b) == (b % p in powers),
                    lambda: f"p={p} a={a} b={b}",
                )
    return recorder.result()


def _random_set(rng: np.random.Generator, size: int, choices: List[int]) -> List[int]:
    return [int(v) for v in rng.choice(choices, size=size)]


@log_time
def odd_basis_properties(samples: int, seed: int = SEED) -> CheckResult:
    """Random minus-one-free sets from [-50, 50] without -1, 0, 1"""
    recorder = _Recorder("odd_basis_properties")
    rng = np.random.default_rng(seed)
    choices = [v for v in range(-50, 51) if abs(v) > 1]
    while recorder.checked + recorder.inconclusive < samples:
        values = sorted(set(_random_set(rng, int(rng.integers(1, 6)), choices)))
        gens = [signed_factored(v) for v in values]
        if has_minus_one_product(gens) is not None:
            recorder.inconclusive += 1
            continue
        try:
            basis = odd_basis(gens)
            check_independent([gens[i] for i in basis.indices])
            selected = [gens[i] for i in basis.indices]
            ok = len(basis.certificates) == len(gens) and all(
                c.x % 2 == 1 and gens[c.index] ** c.x == product(selected, c.exponents) for c in basis.certificates
            )
        except (CertificateError, DependenceError):
            ok = False
        recorder.check(ok, lambda: f"generators {values}")
    return recorder.result()


def _brute_minus_one(values: List[int], span: int = 3) -> Optional[Tuple[int, ...]]:
    gens = [signed_factored(v) for v in values]
    for exps in itertools.product(range(-span, span + 1), repeat=len(values)):
        if any(exps) and product(gens, exps) == MINUS_ONE:
            return exps
    return None


@log_time
def minus_one_bruteforce(samples: int, seed: int = SEED) -> CheckResult:
    """Sets of up to four integers built from the primes 2, 3, 5, 7"""
    recorder = _Recorder("minus_one_bruteforce")
    rng = np.random.default_rng(seed + 1)
    smooth = [n for n in range(2, 13) if all(q in (2, 3, 5, 7) for q in signed_factored(n).primes())]
    choices = smooth + [-n for n in smooth]
    for _ in range(samples):
        values = _random_set(rng, int(rng.integers(1, 5)), choices)
        found = has_minus_one_product([signed_factored(v) for v in values])
        brute = _brute_minus_one(values)
        if found is not None and brute is None and max(abs(e) for e in found) > 3:
            recorder.inconclusive += 1
            continue
        recorder.check((found is None) == (brute is None), lambda: f"{values}: algorithm {found}, brute force {brute}")
    return recorder.result()


def random_system(rng: np.random.Generator, max_bits: int = 16) -> IncongruenceSystem:
    """Random system with M·O <= max_bits, at most four variables and rows"""
    M = int(rng.integers(1, 5))
    O = int(rng.integers(0, min(4, max_bits // M) + 1))
    modulus = 1 << M
    rows = [
        Row(coeffs=[int(c) for c in rng.integers(0, modulus, size=O)], offset=int(rng.integers(0, modulus)), source=0)
        for _ in range(int(rng.integers(0, 5)))
    ]
    return IncongruenceSystem(
        modulus_log2=M, num_vars=O, variables=list(range(O)), rows=rows, mode=Mode.SIGN_EXTENDED, a_members=[], b_members=[]
    )


def brute_force_solve(system: IncongruenceSystem) -> Optional[List[int]]:
    """First satisfying vector in lexicographic order, by plain enumeration"""
    for x in itertools.product(range(system.modulus), repeat=system.num_vars):
        if system.satisfied_by(x):
            return list(x)
    return None


@log_time
def solver_oracle(samples: int, seed: int = SEED) -> CheckResult:
    recorder = _Recorder("solver_oracle")
    rng = np.random.default_rng(seed + 2)
    for _ in range(samples):
        system = random_system(rng)
        expected = brute_force_solve(system)
        got = solve_system(system, seed=seed)
        recorder.check(got == expected, lambda: f"{system.model_dump(mode='json')}: solver {got}, oracle {expected}")
    return recorder.result()


@log_time
def run_selfcheck(limit: int = 10 ** 4, samples: int = 1000, seed: int = SEED) -> SelfCheckReport:
    """
    Run every check. Primes for the lemma suite go up to limit, for the
    solvability oracle up to min(limit, 2000).
    """
    corpus = pair_corpus()
    logger.info(f"selfcheck corpus: {', '.join(f'{v.value}={len(pcs)}' for v, pcs in corpus.items())}")
    checks = [
        lemma_equivalence(limit, corpus),
        solvability_oracle(min(limit, 2000)),
        odd_basis_properties(samples, seed),
        minus_one_bruteforce(samples, seed),
        solver_oracle(samples, seed),
    ]
    logger.debug(f"{len(checks)} selfcheck suites finished")
    return SelfCheckReport(
        limit=limit,
        seed=seed,
        samples=samples,
        passed=all(c.passed for c in checks),
        checks=checks,
        config=get_config_summary(),
    )
