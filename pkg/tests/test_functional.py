"""
Functional tests at acceptance scale

These run full scans over [.., 10^6) (up to 10^7 for an Infinite verdict
without an early match) and the complete self-check suite, so they are marked
slow: run them with `pytest -m slow`.
"""
import json

import numpy as np
import pytest

from expcong.cli.main import run
from expcong.congruence.decide import Outcome, decide
from expcong.congruence.reduction import Mode, build_conditions, build_system
from expcong.core.exceptions import EXIT_INCONSISTENT, EXIT_OK
from expcong.core.selfcheck import run_selfcheck
from expcong.scan.scanner import scan, with_verdict

pytestmark = pytest.mark.slow

MILLION = 10 ** 6


def random_pairs(rng, count):
    """Mix of power pairs (which give odd/even/divisible conditions) and arbitrary pairs with entries up to 100"""
    pairs = []
    for _ in range(count):
        if rng.random() < 0.6:
            c = int(rng.integers(2, 11))
            exps = [e for e in range(0, 5) if c ** e <= 100]
            s, r = (int(e) for e in rng.choice(exps, size=2))
            sa, sb = (int(v) for v in rng.choice([-1, 1], size=2))
            pairs.append((sa * c ** s, sb * c ** r))
        else:
            a, b = (int(v) for v in rng.choice([v for v in range(-100, 101) if v], size=2))
            pairs.append((a, b))
    return pairs


class TestWorkedExample:
    """The five-pair example whose system is x1, x2, x1 + x2 != 0 (mod 2)"""

    def test_system_and_verdict(self, worked_example):
        system = build_system(build_conditions(worked_example))
        assert system.modulus_log2 == 1
        assert [(r.coeffs, r.offset) for r in system.rows] == [([1, 0], 0), ([0, 1], 0), ([1, 1], 0)]
        assert decide(worked_example).outcome is Outcome.FINITE

    def test_no_matching_prime_below_a_million(self, worked_example):
        report = scan(worked_example, lo=5, hi=MILLION, workers=4)
        assert report.matching_count == 0
        assert report.discrepancies == []
        assert report.primes_scanned == 78498 - 2


class TestInfiniteInstance:
    """(2, 3) and (3, 5) are simultaneously insolvable for a positive proportion of primes"""

    def test_many_matches(self, infinite_instance):
        assert decide(infinite_instance).outcome is Outcome.INFINITE
        report = scan(infinite_instance, lo=3, hi=MILLION, workers=4)
        assert report.matching_count >= 5000
        assert report.discrepancies == []

    def test_odd_order_fraction(self):
        report = scan([(2, -4)], lo=3, hi=10 ** 4)
        assert report.primes_scanned == 1228
        assert 0.25 <= report.density_estimate <= 0.34


class TestSignInstance:
    """The two reduction modes disagree and the scan sides with sign-extended"""

    def test_sign_extended_confirmed(self, sign_instance):
        report = scan(sign_instance, lo=5, hi=MILLION, workers=4)
        assert report.matching_count == 0
        assert with_verdict(report, decide(sign_instance, Mode.SIGN_EXTENDED)).consistent is True
        flagged = with_verdict(report, decide(sign_instance, Mode.LITERAL))
        assert flagged.consistent is False

    def test_cli_flags_literal_mode(self, capsys, pairs_file, sign_instance):
        path = pairs_file(sign_instance)
        code = run(["scan", "--input", path, "--from", "5", "--to", str(10 ** 5), "--with-verdict", "--mode", "literal"])
        assert code == EXIT_INCONSISTENT
        assert json.loads(capsys.readouterr().out)["verdict_outcome"] == "infinite"


class TestDeterminism:
    """Reports do not depend on the number of workers"""

    def test_byte_identical_across_workers(self, capsys, pairs_file, worked_example):
        path = pairs_file(worked_example)
        outputs = []
        for workers in ("1", "4"):
            assert run(["scan", "--input", path, "--from", "3", "--to", str(2 * 10 ** 5), "--workers", workers]) == EXIT_OK
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_decide_is_reproducible(self, capsys, pairs_file):
        path = pairs_file([(16, -16), (4, -2), (9, 3)])
        outputs = []
        for _ in range(2):
            assert run(["decide", "--input", path, "--seed", "11"]) == EXIT_OK
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]


class TestConsistencyHarness:
    """Randomized verdicts checked against direct scans"""

    def test_random_systems(self):
        rng = np.random.default_rng(20240)
        outcomes = []
        for _ in range(100):
            pairs = random_pairs(rng, int(rng.integers(1, 5)))
            verdict = decide(pairs)
            context = (pairs, verdict.outcome)
            if verdict.outcome is Outcome.INFINITE:
                report = scan(pairs, lo=3, hi=MILLION, workers=4)
                if report.matching_count == 0:
                    report = scan(pairs, lo=MILLION, hi=10 * MILLION, workers=4)
                assert report.matching_count >= 1, context
            else:
                report = with_verdict(scan(pairs, lo=1000, hi=MILLION, workers=4, floor=1000), verdict)
                assert report.matching_count == 0, context
                assert report.consistent, (context, [d.description for d in report.discrepancies])
            assert report.discrepancies == [], context
            outcomes.append(verdict.outcome)
        assert Outcome.INFINITE in outcomes
        assert Outcome.FINITE in outcomes


class TestWorkerScaling:
    """A multi-worker scan reports exactly what a single worker does"""

    def test_same_report_below_a_million(self, worked_example):
        single = scan(worked_example, lo=3, hi=MILLION, workers=1)
        pooled = scan(worked_example, lo=3, hi=MILLION, workers=4)
        assert pooled.model_dump() == single.model_dump()

    def test_same_report_with_matches(self, infinite_instance):
        single = scan(infinite_instance, lo=3, hi=MILLION, workers=1)
        pooled = scan(infinite_instance, lo=3, hi=MILLION, workers=4, chunk_size=10 ** 4)
        assert pooled.model_dump() == single.model_dump()
        assert single.matching_count > 0


class TestSelfcheck:
    """The full self-check suite"""

    def test_full_run_passes(self):
        report = run_selfcheck(limit=10 ** 4, samples=1000, seed=0)
        failed = [(c.name, c.examples) for c in report.checks if not c.passed]
        assert report.passed, failed
