"""
Polynomial expression parser

Reads text such as "x^5+y^5+z^5" or "x^2+2*y^2+2*i*y*z" into a small AST
(PolyExpr) and converts it to TernaryForm / BinaryForm after checking
homogeneity. '*' is required between factors; '/' divides by constants only;
exponents are non-negative integer literals. Error offsets are 1-based byte
offsets into the UTF-8 input.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from errors import ParseError
from exactnum import I, ONE, ZERO, GaussianRational
from polyring import BinaryForm, TernaryForm

logger = logging.getLogger(__name__)

VARIABLES = ("x", "y", "z", "s", "t")

TOKEN_PATTERNS = [
    ("WHITESPACE", r"\s+"),
    ("INTEGER", r"[0-9]+"),
    ("IDENTIFIER", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("PLUS", r"\+"),
    ("MINUS", r"-"),
    ("STAR", r"\*"),
    ("SLASH", r"/"),
    ("CARET", r"\^"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_PATTERNS))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int      # 1-based byte offset


# ==================== AST ====================

@dataclass(frozen=True)
class Number:
    value: GaussianRational
    offset: int


@dataclass(frozen=True)
class Variable:
    name: str
    offset: int


@dataclass(frozen=True)
class Negate:
    operand: "PolyExpr"
    offset: int


@dataclass(frozen=True)
class BinaryOp:
    op: str                          # one of + - * /
    left: "PolyExpr"
    right: "PolyExpr"
    offset: int


@dataclass(frozen=True)
class Power:
    base: "PolyExpr"
    exponent: int
    offset: int


PolyExpr = Union[Number, Variable, Negate, BinaryOp, Power]


# ==================== Scanner ====================

def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    byte_offset = 1
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos]!r}", byte_offset, "an operator, number or variable")
        lexeme = match.group()
        if match.lastgroup != "WHITESPACE":
            tokens.append(Token(match.lastgroup, lexeme, byte_offset))
        byte_offset += len(lexeme.encode("utf-8"))
        pos = match.end()
    tokens.append(Token("EOF", "", byte_offset))
    return tokens


# ==================== Parser ====================

class Parser:
    """Recursive descent over the token stream"""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def peek(self, kind: str) -> bool:
        return self.token.kind == kind

    def accept(self, kind: str) -> Optional[Token]:
        if self.peek(kind):
            token = self.token
            self.index += 1
            return token
        return None

    def expect(self, kind: str, expected: str) -> Token:
        token = self.accept(kind)
        if token is None:
            raise self.error(expected)
        return token

    def error(self, expected: str) -> ParseError:
        token = self.token
        found = "end of input" if token.kind == "EOF" else repr(token.text)
        return ParseError(f"unexpected {found}", token.offset, expected)

    def parse(self) -> PolyExpr:
        if self.peek("EOF"):
            raise self.error("a polynomial")
        tree = self._expression()
        if not self.peek("EOF"):
            if self.peek("RPAREN"):
                raise ParseError("unbalanced ')'", self.token.offset, "end of input")
            raise self.error("an operator or end of input")
        return tree

    # <EXPRESSION> -> <TERM> { ( '+' | '-' ) <TERM> }*
    def _expression(self) -> PolyExpr:
        tree = self._term()
        while self.peek("PLUS") or self.peek("MINUS"):
            token = self.token
            self.index += 1
            tree = BinaryOp(token.text, tree, self._term(), token.offset)
        return tree

    # <TERM> -> <UNARY> { ( '*' | '/' ) <UNARY> }*
    def _term(self) -> PolyExpr:
        tree = self._unary()
        while self.peek("STAR") or self.peek("SLASH"):
            token = self.token
            self.index += 1
            tree = BinaryOp(token.text, tree, self._unary(), token.offset)
        if self.peek("IDENTIFIER") or self.peek("INTEGER") or self.peek("LPAREN"):
            raise self.error("'*' between factors")
        return tree

    # <UNARY> -> ( '+' | '-' ) <UNARY> | <POWER>
    def _unary(self) -> PolyExpr:
        if self.accept("PLUS"):
            return self._unary()
        token = self.accept("MINUS")
        if token:
            return Negate(self._unary(), token.offset)
        return self._power()

    # <POWER> -> <ATOM> [ '^' INTEGER ]
    def _power(self) -> PolyExpr:
        base = self._atom()
        token = self.accept("CARET")
        if token:
            exponent = self.expect("INTEGER", "a non-negative integer exponent")
            return Power(base, int(exponent.text), token.offset)
        return base

    # <ATOM> -> INTEGER | VARIABLE | 'i' | '(' <EXPRESSION> ')'
    def _atom(self) -> PolyExpr:
        token = self.token
        if self.accept("INTEGER"):
            return Number(GaussianRational(int(token.text)), token.offset)
        if self.accept("IDENTIFIER"):
            if token.text == "i":
                return Number(I, token.offset)
            if token.text in VARIABLES:
                return Variable(token.text, token.offset)
            raise ParseError(f"unknown identifier {token.text!r}", token.offset, f"one of {', '.join(VARIABLES)} or i")
        if self.accept("LPAREN"):
            tree = self._expression()
            if not self.peek("RPAREN"):
                raise ParseError("unbalanced '('", token.offset, "')'")
            self.index += 1
            return tree
        raise self.error("a number, variable or '('")


def parse_poly(text: str) -> PolyExpr:
    """Parse a polynomial expression into its AST"""
    return Parser(text).parse()


# ==================== Evaluation ====================

Monomial = Tuple[int, ...]
SparsePoly = Dict[Monomial, GaussianRational]


def _add(a: SparsePoly, b: SparsePoly, sign: int = 1) -> SparsePoly:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, ZERO) + (c if sign > 0 else -c)
    return {m: c for m, c in out.items() if not c.is_zero()}


def _mul(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    out: SparsePoly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(u + v for u, v in zip(m1, m2))
            out[m] = out.get(m, ZERO) + c1 * c2
    return {m: c for m, c in out.items() if not c.is_zero()}


def expand(tree: PolyExpr) -> SparsePoly:
    """Expand to monomials over VARIABLES"""
    zero_exp = (0,) * len(VARIABLES)
    if isinstance(tree, Number):
        return {} if tree.value.is_zero() else {zero_exp: tree.value}
    if isinstance(tree, Variable):
        exps = [0] * len(VARIABLES)
        exps[VARIABLES.index(tree.name)] = 1
        return {tuple(exps): ONE}
    if isinstance(tree, Negate):
        return {m: -c for m, c in expand(tree.operand).items()}
    if isinstance(tree, Power):
        base = expand(tree.base)
        result = {zero_exp: ONE}
        for _ in range(tree.exponent):
            result = _mul(result, base)
        return result
    left, right = expand(tree.left), expand(tree.right)
    if tree.op == "+":
        return _add(left, right)
    if tree.op == "-":
        return _add(left, right, -1)
    if tree.op == "*":
        return _mul(left, right)
    # '/' by a nonzero constant only
    if any(any(m) for m in right):
        raise ParseError("division by a non-constant", tree.offset, "a constant divisor")
    if not right:
        raise ParseError("division by zero", tree.offset, "a nonzero divisor")
    inverse = right[zero_exp].inverse()
    return {m: c * inverse for m, c in left.items()}


def _homogeneous_degree(poly: SparsePoly, text_offset: int = 1) -> int:
    if not poly:
        raise ParseError("the zero polynomial has no degree", text_offset, "a nonzero polynomial")
    degrees = {sum(m) for m in poly}
    if len(degrees) > 1:
        raise ParseError(f"polynomial is not homogeneous (degrees {sorted(degrees)})", text_offset,
                         "a homogeneous polynomial")
    return degrees.pop()


def _only_variables(poly: SparsePoly, allowed: Tuple[str, ...], tree: PolyExpr):
    for m in poly:
        for name, e in zip(VARIABLES, m):
            if e and name not in allowed:
                raise ParseError(f"variable {name!r} is not allowed here", tree.offset,
                                 f"only {', '.join(allowed)}")


def to_ternary_form(tree: PolyExpr) -> TernaryForm:
    poly = expand(tree)
    _only_variables(poly, ("x", "y", "z"), tree)
    degree = _homogeneous_degree(poly)
    return TernaryForm.from_dict(degree, {m[:3]: c for m, c in poly.items()})


def to_binary_form(tree: PolyExpr) -> BinaryForm:
    poly = expand(tree)
    _only_variables(poly, ("s", "t"), tree)
    degree = _homogeneous_degree(poly)
    coeffs = [ZERO] * (degree + 1)
    for m, c in poly.items():
        coeffs[m[4]] = c
    return BinaryForm(degree, tuple(coeffs))


def parse_ternary_form(text: str) -> TernaryForm:
    form = to_ternary_form(parse_poly(text))
    logger.debug(f"[Parser] {text!r} -> degree {form.degree}, {len(form.terms)} terms")
    return form


def parse_binary_form(text: str) -> BinaryForm:
    return to_binary_form(parse_poly(text))
