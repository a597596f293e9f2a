"""
Unit tests for order witness mining
"""
import pytest
from sympy import n_order

from expcong.core.exceptions import DomainError, ValidationError
from expcong.congruence.decide import IndivisibilitySpec, OrderConditions
from expcong.scan.witnesses import mine_order_witnesses


class TestMineOrderWitnesses:
    """Test cases for mine_order_witnesses"""

    def test_divisibility(self):
        report = mine_order_witnesses(OrderConditions(divisibility=[(2, 12)]), 3, 2000)
        assert report.divisibility.first[0] == 13
        assert report.indivisibility is None
        assert report.discrepancies == []
        for p in report.divisibility.first:
            assert n_order(2, p) % 12 == 0

    def test_negative_base(self):
        report = mine_order_witnesses(OrderConditions(divisibility=[(-3, 4)]), 3, 2000)
        assert report.discrepancies == []
        assert all(n_order(-3 % p, p) % 4 == 0 for p in report.divisibility.first)

    def test_indivisibility(self):
        spec = IndivisibilitySpec(q=2, bases=[2, 3])
        report = mine_order_witnesses(OrderConditions(indivisibility=spec), 3, 1000)
        assert report.indivisibility.first[0] == 23
        assert report.indivisibility.q == 2
        assert report.bad_primes_skipped == 1

    def test_unsatisfiable_indivisibility_has_no_witness(self):
        spec = IndivisibilitySpec(q=2, bases=[2, -8])
        report = mine_order_witnesses(OrderConditions(indivisibility=spec), 3, 5000)
        assert report.indivisibility.count == 0

    def test_gcd(self):
        report = mine_order_witnesses(OrderConditions(gcd=[(2, 4, 12)]), 3, 3000)
        assert 17 in report.gcd.first
        assert 5 in report.gcd.first
        assert [t.q for t in report.gcd_blocks] == [2, 3]
        assert report.discrepancies == []
        assert report.gcd.count <= min(t.count for t in report.gcd_blocks)

    def test_all_kinds_together(self, order_conditions_doc):
        conditions = OrderConditions.model_validate(order_conditions_doc["order_conditions"])
        report = mine_order_witnesses(conditions, 3, 3000, limit=3)
        assert len(report.divisibility.first) == 3
        assert report.discrepancies == []
        assert report.range == (3, 3000)

    def test_non_prime_q(self):
        spec = IndivisibilitySpec(q=6, bases=[2])
        with pytest.raises(DomainError):
            mine_order_witnesses(OrderConditions(indivisibility=spec), 3, 100)

    def test_range_validation(self):
        with pytest.raises(ValidationError, match="empty range"):
            mine_order_witnesses(OrderConditions(divisibility=[(2, 3)]), 10, 5)
