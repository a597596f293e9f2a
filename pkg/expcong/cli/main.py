"""
Command-line front end for expcong.

Every command writes exactly one JSON document to stdout; logs and
diagnostics go to stderr. Exit codes: 0 success, 1 usage error, 2 invalid
input, 3 solver cap exceeded, 4 consistency failure, 5 internal error
(a computed certificate failed re-verification).

Version: 1.0.0
"""
import json
import sys
from typing import Any, Dict, List, Optional, Union

import click
from pydantic import BaseModel

from ..config import SCAN_WORKERS, SEED, SOLVER_CAP, VALID_MODES, validate_config
from ..core.exceptions import (
    EXIT_OK,
    EXIT_USAGE,
    ConsistencyError,
    ExpCongError,
    format_error,
    get_exit_code,
)
from ..core.logger import setup_logging
from ..core.service import InsolvabilityService
from ..utils.utils import load_input_document, require_order_conditions, require_pairs

# lets negative integers through as arguments
NUMERIC_ARGS = {"ignore_unknown_options": True}


def _emit(document: Union[BaseModel, Dict[str, Any]]) -> None:
    if isinstance(document, BaseModel):
        document = document.model_dump(mode="json")
    click.echo(json.dumps(document, sort_keys=False))


@click.group()
@click.option("--log-level", default=None, help="Override LOG_LEVEL (DEBUG, INFO, WARNING, ERROR).")
def cli(log_level: Optional[str]):
    """Decide and verify simultaneous insolvability of exponential congruences a^x = b (mod p)."""
    setup_logging(log_level)
    validate_config()


@cli.command(context_settings=NUMERIC_ARGS)
@click.argument("a", type=int)
@click.argument("b", type=int)
def classify(a: int, b: int):
    """Classify the pair (A, B)."""
    _emit(InsolvabilityService().classify(a, b).summary())


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False), help="JSON document with pairs.")
@click.option("--mode", type=click.Choice(VALID_MODES), default=None, help="Reduction mode (default from EXPCONG_DEFAULT_MODE).")
@click.option("--solver-cap", type=int, default=SOLVER_CAP, show_default=True, help="Largest incongruence search space.")
@click.option("--seed", type=int, default=SEED, show_default=True, help="Preflight sampling seed.")
def decide(input_path: str, mode: Optional[str], solver_cap: int, seed: int):
    """Verdict on whether infinitely many primes make every congruence insolvable."""
    pairs = require_pairs(load_input_document(input_path))
    service = InsolvabilityService(solver_cap=solver_cap, seed=seed)
    _emit(service.decide(pairs, mode))


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False), help="JSON document with pairs.")
@click.option("--from", "lo", type=int, required=True, help="Lower end of the prime range (inclusive).")
@click.option("--to", "hi", type=int, required=True, help="Upper end of the prime range (exclusive).")
@click.option("--workers", type=int, default=SCAN_WORKERS, show_default=True, help="Worker processes (EXPCONG_SCAN_WORKERS).")
@click.option("--with-verdict", is_flag=True, help="Attach the verdict and fail with exit 4 on any inconsistency.")
@click.option("--mode", type=click.Choice(VALID_MODES), default=None, help="Mode of the attached verdict.")
@click.option("--solver-cap", type=int, default=SOLVER_CAP, show_default=True)
@click.option("--seed", type=int, default=SEED, show_default=True)
def scan(input_path: str, lo: int, hi: int, workers: int, with_verdict: bool, mode: Optional[str], solver_cap: int, seed: int):
    """Count primes in [FROM, TO) where every congruence is insolvable."""
    pairs = require_pairs(load_input_document(input_path))
    service = InsolvabilityService(solver_cap=solver_cap, seed=seed, workers=workers)
    report = service.scan(pairs, lo, hi, with_verdict_check=with_verdict, mode=mode)
    _emit(report)
    if with_verdict and not report.consistent:
        raise ConsistencyError(f"{len(report.discrepancies)} discrepancies", discrepancies=report.discrepancies)
    if report.discrepancies:
        raise ConsistencyError(f"{len(report.discrepancies)} criterion discrepancies", discrepancies=report.discrepancies)


@cli.command()
@click.argument("kind", type=click.Choice(["div", "indiv", "gcd"]))
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False), help="JSON document with order_conditions.")
@click.option("--from", "lo", type=int, default=None, help="Mine witnesses from this bound (needs --to).")
@click.option("--to", "hi", type=int, default=None, help="Mine witnesses below this bound.")
def orders(kind: str, input_path: str, lo: Optional[int], hi: Optional[int]):
    """Decide divisibility, indivisibility or gcd conditions on multiplicative orders."""
    if (lo is None) != (hi is None):
        raise click.UsageError("--from and --to go together")
    conditions = require_order_conditions(load_input_document(input_path))
    result = InsolvabilityService().orders(kind, conditions, (lo, hi) if lo is not None else None)
    _emit(result)
    if result.witnesses is not None and result.witnesses.discrepancies:
        raise ConsistencyError(
            f"{len(result.witnesses.discrepancies)} discrepancies while mining witnesses",
            discrepancies=result.witnesses.discrepancies,
        )


@cli.command()
@click.option("--limit", type=int, default=10 ** 4, show_default=True, help="Primes below this bound.")
@click.option("--samples", type=int, default=1000, show_default=True, help="Random instances per oracle.")
@click.option("--seed", type=int, default=SEED, show_default=True)
def selfcheck(limit: int, samples: int, seed: int):
    """Run the lemma-equivalence and oracle suites."""
    report = InsolvabilityService(seed=seed).selfcheck(limit, samples)
    _emit(report)
    if not report.passed:
        raise ConsistencyError("selfcheck found discrepancies")


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on argv and return the exit code instead of exiting"""
    try:
        result = cli.main(args=argv, prog_name="expcong", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except ExpCongError as e:
        click.echo(format_error(e), err=True)
        return get_exit_code(e)
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(run())
