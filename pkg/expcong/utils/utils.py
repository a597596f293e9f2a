"""
Utility Functions Module

This module provides input handling for expcong: parsing and validating JSON
input documents, and the validation rules shared by the command-line front
end and the service layer.

Main Categories:
    - Input Documents: pairs and order conditions read from JSON
    - Input Validation: integer bounds, scan ranges, worker counts and modes

Error Handling:
    All validation functions raise ValidationError with a descriptive message;
    the CLI turns it into exit code 2.

Version: 1.0.0
"""
import json
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, StrictInt, field_validator
from pydantic import ValidationError as PydanticValidationError

from ..config import MAGNITUDE_CAP, PRIME_RANGE_CAP, VALID_MODES
from ..congruence.decide import OrderConditions
from ..core.exceptions import ValidationError


class InputDocument(BaseModel):
    """
    {"pairs": [[a, b], ...]} and/or {"order_conditions": {"divisibility": [[a, m], ...],
    "indivisibility": {"q": q, "bases": [...]}, "gcd": [[a, g, m], ...]}}
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    pairs: List[Tuple[StrictInt, StrictInt]] = []
    order_conditions: Optional[OrderConditions] = None

    @field_validator("pairs")
    @classmethod
    def _pairs_within_cap(cls, pairs):
        for a, b in pairs:
            validate_integer(a, "a")
            validate_integer(b, "b")
        return pairs


def validate_integer(value: int, name: str = "value") -> int:
    """Reject non-integers (including booleans) and integers above the magnitude cap"""
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    if abs(value) > MAGNITUDE_CAP:
        raise ValidationError(f"{name} = {value} exceeds the magnitude cap 2^{MAGNITUDE_CAP.bit_length() - 1}")
    return value


def parse_input_document(text: str) -> InputDocument:
    """
    Parse an input document from JSON text.

    Examples:
        >>> parse_input_document('{"pairs": [[4, 2]]}').pairs
        [(4, 2)]
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"input is not valid JSON: {e.msg} (line {e.lineno})")
    if not isinstance(data, dict):
        raise ValidationError("input document must be a JSON object")
    try:
        return InputDocument.model_validate(data)
    except PydanticValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ValidationError(f"invalid input document at '{location}': {first['msg']}")


def load_input_document(path: str) -> InputDocument:
    """Read and parse the input document at path"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"cannot read input file '{path}': {e.strerror}")
    return parse_input_document(text)


def require_pairs(document: InputDocument) -> List[Tuple[int, int]]:
    if not document.pairs:
        raise ValidationError("input document has no pairs")
    return list(document.pairs)


def require_order_conditions(document: InputDocument) -> OrderConditions:
    if document.order_conditions is None:
        raise ValidationError("input document has no order_conditions")
    return document.order_conditions


def validate_range(lo: int, hi: int) -> Tuple[int, int]:
    """Half-open scan range [lo, hi) with 0 <= lo <= hi <= 2^40"""
    if lo < 0:
        raise ValidationError(f"lower bound must be non-negative, got {lo}")
    if lo > hi:
        raise ValidationError(f"empty range: lo = {lo} > hi = {hi}")
    if hi > PRIME_RANGE_CAP:
        raise ValidationError(f"upper bound {hi} exceeds 2^40")
    return lo, hi


def validate_workers(workers: int) -> int:
    if workers < 1:
        raise ValidationError(f"workers must be at least 1, got {workers}")
    return workers


def validate_mode(mode: str) -> str:
    mode = mode.strip().lower()
    if mode not in VALID_MODES:
        raise ValidationError(f"unknown mode '{mode}', expected one of {', '.join(VALID_MODES)}")
    return mode
