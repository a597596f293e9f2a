"""
Decision Module

Satisfiability of incongruence systems, end-to-end verdicts on whether
infinitely many primes leave a whole system of congruences a_i^x = b_i
insolvable, and the deciders for divisibility, indivisibility and gcd
conditions on multiplicative orders.

Search strategy for solve_system:
    - no rows: the zero vector
    - a row with zero coefficients and zero offset: unsatisfiable outright
    - M = 1: every row is an affine equation over the two-element field,
      solved by elimination (no cap applies)
    - otherwise: lexicographic exhaustive search in numpy blocks, cut short at
      the least witness of a seeded random preflight; a search space above
      the cap raises SolverCapExceeded

Version: 1.0.0
"""
from enum import Enum
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, StrictInt

from ..config import DEFAULT_MODE, MAGNITUDE_CAP, SEED, SOLVER_CAP, SOLVER_PREFLIGHT
from ..core.exceptions import DomainError, SolverCapExceeded, ValidationError
from ..core.logger import get_logger, log_time
from ..numtheory.arith import check_magnitude, factorize, is_prime, valuation
from ..numtheory.exactla import f2_solve
from ..numtheory.multgroup import has_minus_one_product, signed_factored
from .reduction import ConditionSet, EarlyReason, IncongruenceSystem, Mode, build_conditions, build_system

logger = get_logger(__name__)

SEARCH_BLOCK = 1 << 16


# ============================================================================
# INCONGRUENCE SOLVER
# ============================================================================

class SearchMethod(str, Enum):
    EMPTY = "empty"
    ZERO_ROW = "zero_row"
    TWO_ELEMENT_FIELD = "two_element_field"
    EXHAUSTIVE = "exhaustive"


class SystemSearch(BaseModel):
    """Outcome of one solver run; witness is None only after a complete search"""
    model_config = ConfigDict(frozen=True)

    witness: Optional[List[int]] = None
    method: SearchMethod
    space_log2: int
    examined: int


def _shifts(system: IncongruenceSystem) -> np.ndarray:
    M, O = system.modulus_log2, system.num_vars
    return np.array([M * (O - 1 - j) for j in range(O)], dtype=np.int64)


def _row_arrays(system: IncongruenceSystem, wide: bool) -> Tuple[np.ndarray, np.ndarray]:
    dtype = object if wide else np.int64
    coeffs = np.array([row.coeffs for row in system.rows], dtype=dtype).reshape(len(system.rows), system.num_vars)
    offsets = np.array([row.offset for row in system.rows], dtype=dtype)
    return coeffs, offsets


def _is_wide(system: IncongruenceSystem) -> bool:
    """int64 cannot hold a row value before reduction"""
    return 2 * system.modulus_log2 + max(system.num_vars, 1).bit_length() > 62


def _satisfying(digits: np.ndarray, coeffs: np.ndarray, offsets: np.ndarray, modulus: int) -> np.ndarray:
    values = (digits @ coeffs.T + offsets) % modulus
    return np.all(values != 0, axis=1).astype(bool)


def preflight(system: IncongruenceSystem, samples: int = SOLVER_PREFLIGHT, seed: int = SEED) -> Optional[List[int]]:
    """
    Lexicographically least satisfying vector among `samples` seeded random draws.

    A returned vector is a genuine witness; None proves nothing.
    """
    if samples <= 0 or not system.rows or system.num_vars == 0 or system.modulus_log2 > 62:
        return None
    wide = _is_wide(system)
    coeffs, offsets = _row_arrays(system, wide)
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, system.modulus, size=(samples, system.num_vars), dtype=np.int64)
    digits = draws.astype(object) if wide else draws
    hits = draws[_satisfying(digits, coeffs, offsets, system.modulus)]
    if hits.shape[0] == 0:
        return None
    return list(min(tuple(int(v) for v in row) for row in hits))


def _exhaustive(system: IncongruenceSystem, limit: int) -> Tuple[Optional[List[int]], int]:
    """First satisfying vector in lexicographic order among the first `limit` vectors"""
    wide = _is_wide(system)
    coeffs, offsets = _row_arrays(system, wide)
    shifts = _shifts(system)
    mask = system.modulus - 1
    examined = 0
    for start in range(0, limit, SEARCH_BLOCK):
        index = np.arange(start, min(start + SEARCH_BLOCK, limit), dtype=np.int64)
        digits = (index[:, None] >> shifts[None, :]) & mask
        block = digits.astype(object) if wide else digits
        ok = _satisfying(block, coeffs, offsets, system.modulus)
        hits = np.flatnonzero(ok)
        if hits.size:
            examined += int(hits[0]) + 1
            return [int(v) for v in digits[hits[0]]], examined
        examined += index.size
        logger.debug(f"exhaustive search: {examined} of {limit} vectors examined")
    return None, examined


def _vector_index(x: Sequence[int], M: int) -> int:
    index = 0
    for v in x:
        index = (index << M) | v
    return index


@log_time
def search_system(
    system: IncongruenceSystem,
    cap: int = SOLVER_CAP,
    samples: int = SOLVER_PREFLIGHT,
    seed: int = SEED,
) -> SystemSearch:
    """
    Solve the system and report how.

    Raises:
        SolverCapExceeded: 2^(M*O) > cap
    """
    M, O = system.modulus_log2, system.num_vars
    space_log2 = M * O

    if not system.rows:
        return SystemSearch(witness=[0] * O, method=SearchMethod.EMPTY, space_log2=space_log2, examined=0)
    if any(not any(row.coeffs) and row.offset == 0 for row in system.rows):
        return SystemSearch(method=SearchMethod.ZERO_ROW, space_log2=space_log2, examined=0)

    if M == 1:
        rows = [row.coeffs for row in system.rows]
        rhs = [(1 + row.offset) % 2 for row in system.rows]
        witness = f2_solve(rows, rhs, O)
        return SystemSearch(witness=witness, method=SearchMethod.TWO_ELEMENT_FIELD, space_log2=space_log2, examined=0)

    space = 1 << space_log2
    if space > cap:
        logger.warning(f"search space 2^{space_log2} exceeds the solver cap {cap}")
        raise SolverCapExceeded(
            f"search space 2^{space_log2} exceeds the cap 2^{cap.bit_length() - 1}", space=space, cap=cap
        )

    found = preflight(system, samples, seed)
    limit = space if found is None else _vector_index(found, M) + 1
    witness, examined = _exhaustive(system, limit)
    if witness is None and found is not None:
        witness = found
    return SystemSearch(witness=witness, method=SearchMethod.EXHAUSTIVE, space_log2=space_log2, examined=examined)


def solve_system(
    system: IncongruenceSystem,
    cap: int = SOLVER_CAP,
    samples: int = SOLVER_PREFLIGHT,
    seed: int = SEED,
) -> Optional[List[int]]:
    """
    Lexicographically least x in (Z/2^M)^O with coeffs·x + offset != 0 (mod 2^M)
    for every row, or None when no such x exists.

    Examples:
        x1 != 0, x2 != 0, x1 + x2 != 0 (mod 2) has no solution; 2x + 3 != 0
        (mod 4) is solved by x = 0.
    """
    return search_system(system, cap, samples, seed).witness


# ============================================================================
# VERDICTS
# ============================================================================

class Outcome(str, Enum):
    INFINITE = "infinite"
    FINITE = "finite"
    NEVER = "never"


class Reason(str, Enum):
    SATISFIABLE_SYSTEM = "satisfiable_system"
    UNSOLVABLE_SYSTEM = "unsolvable_system"
    MINUS_ONE_PRODUCT = "minus_one_product"
    TRIVIAL_ALWAYS_SOLVABLE = "trivial_always_solvable"


class Verdict(BaseModel):
    """
    Whether infinitely many primes make every congruence insolvable.

    infinite: the system has the witness; finite: only finitely many such
    primes; never: some congruence is solvable at every large prime.
    """
    model_config = ConfigDict(frozen=True)

    outcome: Outcome
    reason: Reason
    witness: Optional[List[int]] = None
    certificate: Optional[Dict[str, Any]] = None
    mode: Mode
    modes_agree: Optional[bool] = None
    empirically_supported: bool = False
    condition_set: ConditionSet
    system: Optional[IncongruenceSystem] = None


def _early_verdict(cs: ConditionSet, mode: Mode) -> Verdict:
    early = cs.early_verdict
    if early.reason is EarlyReason.TRIVIAL_ALWAYS_SOLVABLE:
        return Verdict(
            outcome=Outcome.NEVER,
            reason=Reason.TRIVIAL_ALWAYS_SOLVABLE,
            certificate={"pair": list(early.pair)},
            mode=mode,
            modes_agree=True,
            condition_set=cs,
        )
    return Verdict(
        outcome=Outcome.FINITE,
        reason=Reason.MINUS_ONE_PRODUCT,
        certificate={"elements": list(cs.odd_originals), "exponents": list(early.exponents)},
        mode=mode,
        modes_agree=True,
        condition_set=cs,
    )


def _run_mode(cs: ConditionSet, mode: Mode, cap: int, seed: int) -> Tuple[IncongruenceSystem, SystemSearch]:
    system = build_system(cs, mode)
    return system, search_system(system, cap=cap, seed=seed)


@log_time
def decide(
    pairs: Sequence[Tuple[int, int]],
    mode: Optional[Mode] = None,
    cap: int = SOLVER_CAP,
    seed: int = SEED,
    compare_modes: bool = True,
) -> Verdict:
    """
    Verdict for the system of congruences a_i^x = b_i (mod p).

    Irrational and divisible pairs are carried in the condition set for the
    scanner but never change the verdict. With compare_modes the other mode
    is solved too and modes_agree records whether both outcomes coincide
    (None if the other mode hit the solver cap).

    Raises:
        SolverCapExceeded: the requested mode's search space exceeds the cap
    """
    mode = Mode.parse(mode or DEFAULT_MODE)
    cs = build_conditions(pairs)
    if cs.early_verdict is not None:
        verdict = _early_verdict(cs, mode)
        logger.info(f"verdict: {verdict.outcome.value} ({verdict.reason.value})")
        return verdict

    system, search = _run_mode(cs, mode, cap, seed)
    outcome = Outcome.INFINITE if search.witness is not None else Outcome.FINITE

    modes_agree = None
    if compare_modes:
        other = Mode.LITERAL if mode is Mode.SIGN_EXTENDED else Mode.SIGN_EXTENDED
        try:
            _, other_search = _run_mode(cs, other, cap, seed)
            modes_agree = (other_search.witness is None) == (search.witness is None)
        except SolverCapExceeded:
            logger.warning(f"{other.value} mode hit the solver cap; mode agreement unknown")
        if modes_agree is False:
            logger.warning(f"modes disagree: {mode.value} says {outcome.value}")

    certificate = {"method": search.method.value, "space_log2": search.space_log2, "examined": search.examined}
    verdict = Verdict(
        outcome=outcome,
        reason=Reason.SATISFIABLE_SYSTEM if search.witness is not None else Reason.UNSOLVABLE_SYSTEM,
        witness=search.witness,
        certificate=certificate,
        mode=mode,
        modes_agree=modes_agree,
        empirically_supported=outcome is Outcome.INFINITE and mode is Mode.SIGN_EXTENDED and cs.has_sign(),
        condition_set=cs,
        system=system,
    )
    logger.info(f"verdict: {outcome.value} ({verdict.reason.value}, {search.method.value})")
    return verdict


# ============================================================================
# ORDER CONDITIONS
# ============================================================================

class IndivisibilitySpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    q: StrictInt
    bases: List[StrictInt]


class OrderConditions(BaseModel):
    """Conditions on ord_p of given integers, as read from an input document"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    divisibility: List[Tuple[StrictInt, StrictInt]] = []
    indivisibility: Optional[IndivisibilitySpec] = None
    gcd: List[Tuple[StrictInt, StrictInt, StrictInt]] = []

    def bases(self) -> List[int]:
        values = [a for a, _ in self.divisibility] + [a for a, _, _ in self.gcd]
        if self.indivisibility is not None:
            values += self.indivisibility.bases
        return values


class IndivisibilityResult(BaseModel):
    """Infinitely many p with q not dividing ord_p(a) for every base a?"""
    model_config = ConfigDict(frozen=True)

    q: int
    bases: List[int]
    satisfiable: bool
    certificate: Optional[List[int]] = None


def _check_nonzero(values: Sequence[int], name: str) -> None:
    for v in values:
        check_magnitude(v, name)
        if v == 0:
            raise ValidationError(f"{name} must be nonzero")


def decide_indivisibility(q: int, bases: Sequence[int]) -> IndivisibilityResult:
    """
    Odd q is always satisfiable; for q = 2 the condition fails exactly when
    some product of the bases equals -1, and the exponents are the certificate.

    Examples:
        >>> decide_indivisibility(2, [2, -8]).certificate
        [3, -1]
    """
    check_magnitude(q, "q")
    if not is_prime(q):
        raise DomainError(f"q = {q} is not a prime")
    _check_nonzero(bases, "base")
    bases = list(bases)
    if q != 2 or not bases:
        return IndivisibilityResult(q=q, bases=bases, satisfiable=True)
    witness = has_minus_one_product([signed_factored(a) for a in bases])
    return IndivisibilityResult(q=q, bases=bases, satisfiable=witness is None, certificate=witness)


class EncodedPair(BaseModel):
    """
    (base^high_exp, base^low_exp) with high_exp = q^k, low_exp = q^(k-1): the
    congruence is insolvable at p exactly when q^k divides ord_p(base).
    pair holds the integer values when they fit the magnitude cap.
    """
    model_config = ConfigDict(frozen=True)

    base: int
    q: int
    k: int
    high_exp: int
    low_exp: int
    pair: Optional[Tuple[int, int]] = None


class DivisibilityRequirement(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: int
    m: int
    base: int
    modulus: int
    encoded: List[EncodedPair]


class DivisibilityResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    satisfiable: bool
    requirements: List[DivisibilityRequirement]

    def encoded_pairs(self) -> List[Tuple[int, int]]:
        return [e.pair for r in self.requirements for e in r.encoded if e.pair is not None]


def _encode(base: int, q: int, k: int) -> EncodedPair:
    high, low = q ** k, q ** (k - 1)
    pair = None
    if high * (base.bit_length() - 1) < MAGNITUDE_CAP.bit_length() and base ** high <= MAGNITUDE_CAP:
        pair = (base ** high, base ** low)
    return EncodedPair(base=base, q=q, k=k, high_exp=high, low_exp=low, pair=pair)


def decide_divisibility(reqs: Sequence[Tuple[int, int]]) -> DivisibilityResult:
    """
    Infinitely many p with m_i | ord_p(a_i) for all i: always satisfiable.

    Each requirement is encoded as congruence pairs, one per prime power q^k
    exactly dividing m; a negative a is replaced by |a| with m doubled, since
    ord_p(-a) and ord_p(a) differ by a factor of 1/2, 1 or 2.

    Raises:
        DomainError: some |a| <= 1
        ValidationError: some m < 1
    """
    requirements = []
    for a, m in reqs:
        check_magnitude(a, "a")
        check_magnitude(m, "m")
        if abs(a) <= 1:
            raise DomainError(f"divisibility needs |a| > 1, got {a}")
        if m < 1:
            raise ValidationError(f"m must be positive, got {m}")
        base, modulus = (abs(a), 2 * m) if a < 0 else (a, m)
        encoded = [_encode(base, q, k) for q, k in factorize(modulus).factors] if modulus > 1 else []
        requirements.append(DivisibilityRequirement(a=a, m=m, base=base, modulus=modulus, encoded=encoded))
    return DivisibilityResult(satisfiable=True, requirements=requirements)


class GcdLabel(str, Enum):
    DIVISIBILITY = "divisibility"
    INDIVISIBILITY = "indivisibility"
    VACUOUS = "vacuous"
    MIXED = "mixed"


class GcdCondition(BaseModel):
    """gcd(ord_p(a), modulus) = target, both powers of the block's prime"""
    model_config = ConfigDict(frozen=True)

    a: int
    modulus: int
    target: int


class GcdBlock(BaseModel):
    model_config = ConfigDict(frozen=True)

    q: int
    conditions: List[GcdCondition]
    label: GcdLabel
    satisfiable: Optional[bool] = None


class GcdSplit(BaseModel):
    model_config = ConfigDict(frozen=True)

    triples: List[Tuple[int, int, int]]
    blocks: List[GcdBlock]
    satisfiable: Optional[bool] = None


def _unit_holds(a: int, modulus: int, target: int) -> bool:
    """gcd(ord_p(a), modulus) = target for a = +-1 at every odd p"""
    order = 1 if a == 1 else 2
    return gcd(order, modulus) == target


def _label_block(q: int, conditions: List[GcdCondition]) -> GcdBlock:
    units = [c for c in conditions if abs(c.a) == 1]
    rest = [c for c in conditions if abs(c.a) != 1]
    if not all(_unit_holds(c.a, c.modulus, c.target) for c in units):
        label = GcdLabel.MIXED
        if rest and all(c.target == c.modulus for c in rest):
            label = GcdLabel.DIVISIBILITY
        elif rest and all(c.target == 1 for c in rest):
            label = GcdLabel.INDIVISIBILITY
        return GcdBlock(q=q, conditions=conditions, label=label, satisfiable=False)
    if not rest:
        return GcdBlock(q=q, conditions=conditions, label=GcdLabel.VACUOUS, satisfiable=True)
    if all(c.target == c.modulus for c in rest):
        return GcdBlock(q=q, conditions=conditions, label=GcdLabel.DIVISIBILITY, satisfiable=True)
    if all(c.target == 1 for c in rest):
        result = decide_indivisibility(q, [c.a for c in rest])
        return GcdBlock(q=q, conditions=conditions, label=GcdLabel.INDIVISIBILITY, satisfiable=result.satisfiable)
    return GcdBlock(q=q, conditions=conditions, label=GcdLabel.MIXED)


def split_gcd(triples: Sequence[Tuple[int, int, int]]) -> GcdSplit:
    """
    Split gcd(ord_p(a_i), m_i) = g_i into one block per prime q dividing some
    m_i, with conditions gcd(ord_p(a_i), q^v_q(m_i)) = q^v_q(g_i).

    Entries with v_q(m_i) = 0 are omitted from a block. Each block is labelled
    divisibility, indivisibility, vacuous or mixed, and the pure labels carry
    a satisfiability decision. The whole system is satisfiable exactly when
    every block is, so the overall answer is None only while some block is
    undecided. The split itself is also checked empirically by the witness
    miner.

    Examples:
        split_gcd([(2, 4, 12)]) has blocks q=2: (2, 4, 4) and q=3: (2, 3, 1).

    Raises:
        ValidationError: g < 1 or g does not divide m
    """
    checked = []
    for a, g, m in triples:
        _check_nonzero([a], "a")
        check_magnitude(g, "g")
        check_magnitude(m, "m")
        if g < 1 or m < 1 or m % g:
            raise ValidationError(f"need 1 <= g | m, got g = {g}, m = {m}")
        checked.append((a, g, m))

    primes = sorted({q for _, _, m in checked if m > 1 for q in factorize(m).primes()})
    blocks = []
    for q in primes:
        conditions = []
        for a, g, m in checked:
            e = valuation(m, q)
            if e == 0:
                continue
            conditions.append(GcdCondition(a=a, modulus=q ** e, target=q ** valuation(g, q)))
        blocks.append(_label_block(q, conditions))

    # the whole system holds for infinitely many p iff every block does
    if any(b.satisfiable is False for b in blocks):
        satisfiable = False
    elif all(b.satisfiable for b in blocks):
        satisfiable = True
    else:
        satisfiable = None
    logger.info(f"gcd split: {len(blocks)} blocks ({', '.join(b.label.value for b in blocks)})")
    return GcdSplit(triples=checked, blocks=blocks, satisfiable=satisfiable)

