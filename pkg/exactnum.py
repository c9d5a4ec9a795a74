"""
Exact numbers

Integers are Python ints, rationals are fractions.Fraction (always reduced with
a positive denominator), and GaussianRational is an element of Q(i) built on
top of them. Nothing in a result-bearing path ever touches a float.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from errors import DomainError

Integer = int
Rational = Fraction
Scalar = Union[int, Fraction, "GaussianRational"]

_INTEGER_RE = re.compile(r"-?(0|[1-9][0-9]*)")
_RATIONAL_RE = re.compile(r"(-?(?:0|[1-9][0-9]*))(?:/([1-9][0-9]*))?")


# ==================== Integer / Rational encodings ====================

def render_integer(n: int) -> str:
    """Decimal string, no separators, leading minus for negatives"""
    return str(int(n))


def parse_integer(text: str) -> int:
    text = text.strip()
    if not _INTEGER_RE.fullmatch(text):
        raise DomainError(f"not a decimal integer: {text!r}")
    return int(text)


def render_rational(q: Fraction) -> str:
    """'p/q', or 'p' when the denominator is 1"""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    match = _RATIONAL_RE.fullmatch(text)
    if not match:
        raise DomainError(f"not a rational number: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    return Fraction(numerator, denominator)


def reduce_rational(q: Fraction) -> Fraction:
    """Canonical form; Fraction already normalizes, so this is idempotent"""
    return Fraction(q.numerator, q.denominator)


def as_integer(q: Fraction, what: str = "value") -> int:
    """Exact conversion of an integral rational, DomainError otherwise"""
    q = Fraction(q)
    if q.denominator != 1:
        raise DomainError(f"{what} is not an integer: {render_rational(q)}")
    return q.numerator


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


# ==================== Gaussian rationals ====================

@dataclass(frozen=True, slots=True)
class GaussianRational:
    """Element re + im*i of Q(i)"""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", _to_fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", _to_fraction(self.im))

    @classmethod
    def coerce(cls, value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(_to_fraction(value), Fraction(0))

    # ----- predicates -----

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    # ----- field operations -----

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re + other, self.im)
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re - other, self.im)
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0:
            return GaussianRational(a * c, a * d)
        if d == 0:
            return GaussianRational(a * c, b * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """re^2 + im^2; zero exactly when self is zero"""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        if self.is_zero():
            raise DomainError("division by zero in Q(i)")
        if self.im == 0:
            return GaussianRational(1 / self.re, Fraction(0))
        n = self.norm()
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    raise DomainError("division by zero in Q(i)")
                return GaussianRational(self.re / other, self.im / other)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # ----- rendering -----

    def render(self) -> str:
        """'a+b*i' with canonical signs; 'i'/'-i' for unit imaginary parts"""
        if self.im == 0:
            return render_rational(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{render_rational(self.im)}*i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{render_rational(self.re)}{sign}{imag}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GaussianRational({self.render()})"


ZERO = GaussianRational(Fraction(0), Fraction(0))
ONE = GaussianRational(Fraction(1), Fraction(0))
I = GaussianRational(Fraction(0), Fraction(1))


def gaussian_field_ops(a: GaussianRational, b: GaussianRational, op: str) -> GaussianRational:
    """Named dispatch over the Q(i) operations, mostly for the command line and tests"""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "conj":
        return a.conjugate()
    if op == "inv":
        return a.inverse()
    raise DomainError(f"unknown Q(i) operation: {op}")
