"""
Unit tests for input documents and validation helpers
"""
import json

import pytest

from expcong.core.exceptions import ValidationError
from expcong.utils.utils import (
    load_input_document,
    parse_input_document,
    require_order_conditions,
    require_pairs,
    validate_integer,
    validate_mode,
    validate_range,
    validate_workers,
)


class TestInputDocuments:
    """Test cases for parse_input_document and load_input_document"""

    def test_pairs(self):
        document = parse_input_document('{"pairs": [[4, -16], [9, 3]]}')
        assert require_pairs(document) == [(4, -16), (9, 3)]
        assert document.order_conditions is None

    def test_order_conditions(self, order_conditions_doc):
        document = parse_input_document(json.dumps(order_conditions_doc))
        conditions = require_order_conditions(document)
        assert conditions.divisibility == [(2, 12)]
        assert conditions.indivisibility.q == 2
        assert conditions.gcd == [(2, 4, 12)]

    def test_invalid_json(self):
        with pytest.raises(ValidationError, match="not valid JSON"):
            parse_input_document('{"pairs": [[4, 2]')

    def test_not_an_object(self):
        with pytest.raises(ValidationError, match="JSON object"):
            parse_input_document("[[4, 2]]")

    def test_extra_field(self):
        with pytest.raises(ValidationError, match="colour"):
            parse_input_document('{"pairs": [[4, 2]], "colour": "blue"}')

    def test_fractional_entry(self):
        with pytest.raises(ValidationError, match="pairs"):
            parse_input_document('{"pairs": [[4.5, 2]]}')

    @pytest.mark.parametrize("text", [
        '{"pairs": [[4.0, 2]]}',
        '{"pairs": [[true, 2]]}',
        '{"pairs": [["4", 2]]}',
        '{"order_conditions": {"divisibility": [[2, 12.0]]}}',
        '{"order_conditions": {"indivisibility": {"q": "2", "bases": [2]}}}',
        '{"order_conditions": {"gcd": [[2, 4, 12]], "lcm": []}}',
    ])
    def test_entries_must_be_plain_integers(self, text):
        with pytest.raises(ValidationError, match="invalid input document"):
            parse_input_document(text)

    def test_wrong_arity(self):
        with pytest.raises(ValidationError):
            parse_input_document('{"pairs": [[4, 2, 1]]}')

    def test_magnitude_cap(self):
        with pytest.raises(ValidationError, match="exceeds the magnitude cap"):
            parse_input_document(json.dumps({"pairs": [[2 ** 62 + 1, 2]]}))

    def test_missing_sections(self):
        document = parse_input_document("{}")
        with pytest.raises(ValidationError, match="no pairs"):
            require_pairs(document)
        with pytest.raises(ValidationError, match="no order_conditions"):
            require_order_conditions(document)

    def test_load(self, input_file):
        path = input_file({"pairs": [[2, 3]]}, "pairs.json")
        assert load_input_document(str(path)).pairs == [(2, 3)]

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="cannot read"):
            load_input_document(str(tmp_path / "absent.json"))


class TestValidation:
    """Test cases for the validation helpers"""

    def test_integer(self):
        assert validate_integer(-7) == -7
        with pytest.raises(ValidationError, match="integer"):
            validate_integer(True)
        with pytest.raises(ValidationError, match="integer"):
            validate_integer(1.0)

    def test_range(self):
        assert validate_range(3, 3) == (3, 3)
        with pytest.raises(ValidationError, match="empty range"):
            validate_range(10, 5)
        with pytest.raises(ValidationError, match="non-negative"):
            validate_range(-1, 5)
        with pytest.raises(ValidationError, match="2\\^40"):
            validate_range(3, (1 << 40) + 1)

    def test_workers(self):
        assert validate_workers(4) == 4
        with pytest.raises(ValidationError):
            validate_workers(0)

    def test_mode(self):
        assert validate_mode(" Literal ") == "literal"
        assert validate_mode("sign-extended") == "sign-extended"
        with pytest.raises(ValidationError, match="unknown mode"):
            validate_mode("signed")
