"""Tests for the polynomial expression parser"""

from fractions import Fraction

import pytest

from errors import ParseError
from exactnum import I
from expr_parser import BinaryOp, Power, Variable, parse_binary_form, parse_poly, parse_ternary_form, tokenize
from polyring import BinaryForm, TernaryForm


def test_tokenize_offsets():
    tokens = tokenize("x^2 + 3*y")
    assert [(t.kind, t.offset) for t in tokens] == [
        ("IDENTIFIER", 1), ("CARET", 2), ("INTEGER", 3), ("PLUS", 5),
        ("INTEGER", 7), ("STAR", 8), ("IDENTIFIER", 9), ("EOF", 10),
    ]


def test_precedence():
    tree = parse_poly("x+y^2*z")
    assert isinstance(tree, BinaryOp) and tree.op == "+"
    assert isinstance(tree.left, Variable)
    assert isinstance(tree.right, BinaryOp) and tree.right.op == "*"
    assert isinstance(tree.right.left, Power) and tree.right.left.exponent == 2


def test_fermat_quintic():
    form = parse_ternary_form("x^5+y^5+z^5")
    assert form.degree == 5
    assert len(form.terms) == 3


def test_gaussian_coefficients():
    form = parse_ternary_form("x^2+2*y^2+2*i*y*z")
    assert form == TernaryForm.from_dict(2, {(2, 0, 0): 1, (0, 2, 0): 2, (0, 1, 1): 2 * I})


def test_rational_coefficients():
    form = parse_ternary_form("x/2+y/2")
    assert form.evaluate((1, 1, 0)) == 1
    assert form.evaluate((1, 0, 0)) == Fraction(1, 2)


def test_negated_power():
    x, y = TernaryForm.variable(0), TernaryForm.variable(1)
    assert parse_ternary_form("-(x+y)^2") == (x + y) * (x + y) * -1


def test_binary_forms():
    assert parse_binary_form("s^2+t^2") == BinaryForm.from_coeffs([1, 0, 1])
    assert parse_binary_form("s*t^2") == BinaryForm.from_coeffs([0, 0, 1, 0])
    assert parse_binary_form("(s-t)^4") == BinaryForm.from_coeffs([1, -4, 6, -4, 1])


@pytest.mark.parametrize("text, offset", [
    ("x^2+y", 1),          # not homogeneous
    ("2x", 2),             # missing '*'
    ("(x+y", 1),           # unbalanced '('
    ("x+y)", 4),           # unbalanced ')'
    ("x^y", 3),            # exponent must be an integer literal
    ("w^2", 1),            # unknown identifier
    ("x/y", 2),            # division by a non-constant
    ("x/0", 2),            # division by zero
    ("x-x", 1),            # zero polynomial
    ("x^2 $", 5),          # unexpected character
    ("x^2+", 5),           # dangling operator
    ("", 1),
    ("\u00a0x y", 5),     # offsets count UTF-8 bytes
])
def test_parse_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse_ternary_form(text)
    assert info.value.offset == offset
    assert f"at offset {offset}" in str(info.value)


def test_parse_error_names_the_expected_token():
    with pytest.raises(ParseError) as info:
        parse_ternary_form("2x")
    assert info.value.expected == "'*' between factors"


def test_variables_are_checked_per_form():
    with pytest.raises(ParseError):
        parse_binary_form("x*s")
    with pytest.raises(ParseError):
        parse_ternary_form("s^2+x^2")
