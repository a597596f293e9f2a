"""
Global test configuration and fixtures
"""
import json
import os

import numpy as np
import pytest

# Set test environment variables before expcong.config is imported
os.environ.update({
    'LOG_LEVEL': 'WARNING',
    'EXPCONG_SEED': '0',
    'EXPCONG_SCAN_WORKERS': '1',
    'EXPCONG_FINITE_FLOOR': '1000',
})

from expcong.core.cache import factor_cache  # noqa: E402

WORKED_EXAMPLE = [(4, -16), (9, -81), (4, 2), (9, 3), (36, 6)]
SIGN_INSTANCE = [(4, -16), (4, 2), (4, -8)]
INFINITE_INSTANCE = [(2, 3), (3, 5)]


@pytest.fixture(autouse=True)
def clear_factor_cache():
    """Start every test with an empty factorization cache"""
    factor_cache.clear()
    yield
    factor_cache.clear()


@pytest.fixture
def worked_example():
    """Five pairs whose reduced system is x1, x2, x1 + x2 != 0 (mod 2)"""
    return list(WORKED_EXAMPLE)


@pytest.fixture
def sign_instance():
    """Pairs on which the two reduction modes disagree"""
    return list(SIGN_INSTANCE)


@pytest.fixture
def infinite_instance():
    """Two irrational pairs; infinitely many primes make both insolvable"""
    return list(INFINITE_INSTANCE)


@pytest.fixture
def order_conditions_doc():
    return {
        "order_conditions": {
            "divisibility": [[2, 12]],
            "indivisibility": {"q": 2, "bases": [2, 3]},
            "gcd": [[2, 4, 12]],
        }
    }


@pytest.fixture
def rng():
    """Seeded generator for randomized tests"""
    return np.random.default_rng(12345)


@pytest.fixture
def input_file(tmp_path):
    """Write a document (dict or raw text) to a temporary JSON file and return its path"""
    def _write(document, name="input.json"):
        path = tmp_path / name
        text = document if isinstance(document, str) else json.dumps(document)
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def pairs_file(input_file):
    def _write(pairs, name="pairs.json"):
        return input_file({"pairs": [list(p) for p in pairs]}, name)
    return _write
