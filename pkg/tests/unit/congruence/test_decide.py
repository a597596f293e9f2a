"""
Unit tests for the solver, verdicts and order-condition deciders
"""
import numpy as np
import pytest

from expcong.core.exceptions import DomainError, SolverCapExceeded, ValidationError
from expcong.core.selfcheck import brute_force_solve, random_system
from expcong.congruence.decide import (
    GcdLabel,
    Outcome,
    Reason,
    SearchMethod,
    decide,
    decide_divisibility,
    decide_indivisibility,
    preflight,
    search_system,
    solve_system,
    split_gcd,
)
from expcong.congruence.reduction import IncongruenceSystem, Mode, Row


def make_system(M, rows, num_vars=None):
    num_vars = len(rows[0][0]) if num_vars is None else num_vars
    return IncongruenceSystem(
        modulus_log2=M,
        num_vars=num_vars,
        variables=list(range(num_vars)),
        rows=[Row(coeffs=list(c), offset=o, source=0) for c, o in rows],
        mode=Mode.SIGN_EXTENDED,
        a_members=[],
        b_members=[],
    )


class TestSolver:
    """Test cases for search_system and solve_system"""

    def test_two_element_field_unsolvable(self):
        system = make_system(1, [([1, 0], 0), ([0, 1], 0), ([1, 1], 0)])
        search = search_system(system)
        assert search.witness is None
        assert search.method is SearchMethod.TWO_ELEMENT_FIELD

    def test_two_element_field_offsets(self):
        system = make_system(1, [([1, 1], 1), ([1, 0], 0)])
        assert solve_system(system) == [1, 1]

    def test_modulo_four(self):
        assert solve_system(make_system(2, [([2], 3)])) == [0]
        assert solve_system(make_system(2, [([1], 0)])) == [1]
        search = search_system(make_system(2, [([1], 0), ([1], 3)]))
        assert search.witness == [2]
        assert search.method is SearchMethod.EXHAUSTIVE

    def test_no_rows(self):
        search = search_system(make_system(3, [], num_vars=2))
        assert search.witness == [0, 0]
        assert search.method is SearchMethod.EMPTY

    def test_zero_row(self):
        search = search_system(make_system(2, [([1, 1], 1), ([0, 0], 0)]))
        assert search.witness is None
        assert search.method is SearchMethod.ZERO_ROW

    def test_exhaustive_unsolvable(self):
        system = make_system(2, [([1], 0), ([1], 1), ([1], 2), ([1], 3)])
        search = search_system(system)
        assert search.witness is None
        assert search.examined == 4

    def test_cap_exceeded(self):
        system = make_system(2, [([1, 0], k) for k in range(4)])
        with pytest.raises(SolverCapExceeded) as exc_info:
            search_system(system, cap=8)
        assert exc_info.value.space == 16

    def test_cap_exceeded_even_when_easily_satisfiable(self):
        system = make_system(4, [([1, 0, 0], 0)])
        with pytest.raises(SolverCapExceeded) as exc_info:
            search_system(system, cap=16)
        assert exc_info.value.cap == 16
        assert search_system(system, cap=1 << 12).witness == [1, 0, 0]

    def test_preflight_is_seeded(self):
        system = make_system(4, [([1, 3], 5), ([2, 1], 0)])
        assert preflight(system, 500, seed=7) == preflight(system, 500, seed=7)
        assert preflight(system, 0) is None

    def test_wide_modulus(self):
        with pytest.raises(SolverCapExceeded):
            search_system(make_system(40, [([1], 0)]), cap=1 << 24)
        search = search_system(make_system(20, [([1], 0), ([1], (1 << 20) - 1)]), cap=1 << 24)
        assert search.witness == [2]
        assert search.method is SearchMethod.EXHAUSTIVE

    def test_preflight_does_not_change_the_witness(self):
        system = make_system(3, [([1, 2], 1), ([3, 1], 0), ([1, 1], 7)])
        expected = brute_force_solve(system)
        for samples in (0, 10, 1000):
            assert solve_system(system, samples=samples, seed=5) == expected

    def test_matches_brute_force(self):
        rng = np.random.default_rng(2024)
        for _ in range(300):
            system = random_system(rng)
            witness = solve_system(system)
            assert witness == brute_force_solve(system)
            if witness is not None:
                assert system.satisfied_by(witness)


class TestDecide:
    """Test cases for end-to-end verdicts"""

    def test_worked_example_finite(self, worked_example):
        verdict = decide(worked_example)
        assert verdict.outcome is Outcome.FINITE
        assert verdict.reason is Reason.UNSOLVABLE_SYSTEM
        assert verdict.mode is Mode.SIGN_EXTENDED
        assert verdict.modes_agree is True
        assert verdict.witness is None
        assert verdict.certificate["method"] == "two_element_field"
        assert [r.coeffs for r in verdict.system.rows] == [[1, 0], [0, 1], [1, 1]]

    def test_sign_instance_modes_disagree(self, sign_instance):
        extended = decide(sign_instance, mode=Mode.SIGN_EXTENDED)
        literal = decide(sign_instance, mode="literal")
        assert extended.outcome is Outcome.FINITE
        assert literal.outcome is Outcome.INFINITE
        assert literal.witness == [1]
        assert extended.modes_agree is False
        assert literal.modes_agree is False
        assert literal.empirically_supported is False

    def test_infinite_instance(self, infinite_instance):
        verdict = decide(infinite_instance)
        assert verdict.outcome is Outcome.INFINITE
        assert verdict.reason is Reason.SATISFIABLE_SYSTEM
        assert verdict.witness == []
        assert verdict.condition_set.irrational_list == [(2, 3), (3, 5)]

    def test_empirically_supported_with_signs(self):
        verdict = decide([(16, -16), (4, -2)])
        assert verdict.outcome is Outcome.INFINITE
        assert verdict.witness == [0]
        assert verdict.empirically_supported is True

    def test_trivial_pair_never(self):
        verdict = decide([(4, 2), (2, 4)])
        assert verdict.outcome is Outcome.NEVER
        assert verdict.reason is Reason.TRIVIAL_ALWAYS_SOLVABLE
        assert verdict.certificate == {"pair": [2, 4]}
        assert verdict.system is None

    def test_minus_one_product_finite(self):
        verdict = decide([(2, -2), (-8, 8)])
        assert verdict.outcome is Outcome.FINITE
        assert verdict.reason is Reason.MINUS_ONE_PRODUCT
        assert verdict.certificate == {"elements": [2, -8], "exponents": [3, -1]}

    def test_without_mode_comparison(self, worked_example):
        assert decide(worked_example, compare_modes=False).modes_agree is None

    def test_serializes(self, worked_example):
        data = decide(worked_example).model_dump(mode="json")
        assert data["outcome"] == "finite"
        assert data["reason"] == "unsolvable_system"
        assert data["mode"] == "sign-extended"
        assert data["system"]["modulus_log2"] == 1
        assert data["condition_set"]["odd_list"] == [4, 9]

    def test_invalid_mode(self, worked_example):
        with pytest.raises(ValidationError, match="unknown mode"):
            decide(worked_example, mode="bogus")


class TestIndivisibility:
    """Test cases for decide_indivisibility"""

    def test_minus_one_certificate(self):
        result = decide_indivisibility(2, [2, -8])
        assert result.satisfiable is False
        assert result.certificate == [3, -1]

    def test_satisfiable(self):
        assert decide_indivisibility(2, [2, 3]).satisfiable is True
        assert decide_indivisibility(3, [2, -8]).satisfiable is True
        assert decide_indivisibility(2, []).satisfiable is True

    def test_domain(self):
        with pytest.raises(DomainError, match="not a prime"):
            decide_indivisibility(4, [2])
        with pytest.raises(ValidationError, match="nonzero"):
            decide_indivisibility(2, [0])


class TestDivisibility:
    """Test cases for decide_divisibility"""

    def test_encoding(self):
        result = decide_divisibility([(2, 12)])
        assert result.satisfiable is True
        requirement = result.requirements[0]
        assert (requirement.base, requirement.modulus) == (2, 12)
        assert [(e.q, e.k, e.pair) for e in requirement.encoded] == [(2, 2, (16, 4)), (3, 1, (8, 2))]
        assert result.encoded_pairs() == [(16, 4), (8, 2)]

    def test_negative_base_doubles_modulus(self):
        requirement = decide_divisibility([(-3, 5)]).requirements[0]
        assert (requirement.base, requirement.modulus) == (3, 10)

    def test_trivial_modulus(self):
        assert decide_divisibility([(5, 1)]).requirements[0].encoded == []

    def test_oversized_power_left_symbolic(self):
        encoded = decide_divisibility([(1000, 64)]).requirements[0].encoded[0]
        assert encoded.high_exp == 64
        assert encoded.pair is None

    def test_domain(self):
        with pytest.raises(DomainError):
            decide_divisibility([(1, 3)])
        with pytest.raises(ValidationError, match="positive"):
            decide_divisibility([(2, 0)])


class TestSplitGcd:
    """Test cases for split_gcd"""

    def test_two_blocks(self):
        split = split_gcd([(2, 4, 12)])
        assert [(b.q, [(c.a, c.modulus, c.target) for c in b.conditions]) for b in split.blocks] == [
            (2, [(2, 4, 4)]),
            (3, [(2, 3, 1)]),
        ]
        assert [b.label for b in split.blocks] == [GcdLabel.DIVISIBILITY, GcdLabel.INDIVISIBILITY]
        assert all(b.satisfiable for b in split.blocks)
        assert split.satisfiable is True

    def test_satisfiable_blocks_combine(self):
        split = split_gcd([(6, 9, 45)])
        assert [(b.q, b.label, b.satisfiable) for b in split.blocks] == [
            (3, GcdLabel.DIVISIBILITY, True),
            (5, GcdLabel.INDIVISIBILITY, True),
        ]
        assert split.satisfiable is True

    def test_undecided_block_leaves_result_open(self):
        split = split_gcd([(2, 2, 4), (2, 1, 3)])
        assert [b.satisfiable for b in split.blocks] == [None, True]
        assert split.satisfiable is None

    def test_vacuous_entries_omitted(self):
        split = split_gcd([(2, 1, 4), (3, 3, 9)])
        assert [(b.q, len(b.conditions)) for b in split.blocks] == [(2, 1), (3, 1)]

    def test_indivisibility_block_unsatisfiable(self):
        split = split_gcd([(2, 1, 2), (-8, 1, 2)])
        assert split.blocks[0].label is GcdLabel.INDIVISIBILITY
        assert split.satisfiable is False

    def test_mixed_block(self):
        split = split_gcd([(2, 2, 4), (3, 4, 4)])
        assert split.blocks[0].label is GcdLabel.MIXED
        assert split.satisfiable is None

    def test_unit_bases(self):
        assert split_gcd([(-1, 2, 4)]).satisfiable is True
        assert split_gcd([(-1, 1, 4)]).satisfiable is False
        assert split_gcd([(1, 1, 6)]).blocks[0].label is GcdLabel.VACUOUS

    def test_no_blocks(self):
        assert split_gcd([(5, 1, 1)]).satisfiable is True

    def test_validation(self):
        with pytest.raises(ValidationError, match="g \\| m"):
            split_gcd([(2, 3, 4)])
        with pytest.raises(ValidationError, match="nonzero"):
            split_gcd([(0, 1, 2)])
