"""
Polynomial and truncated-series kernels

- UnivariatePoly: dense polynomials over Q(i) with the gcd / squarefree machinery
- BinaryForm, TernaryForm: homogeneous forms in (s,t) and (x,y,z) over Q(i)
- resultant: Sylvester determinant of polynomials with polynomial coefficients
- TruncatedMultiSeries: dense multigraded series over Q truncated at per-variable
  caps, i.e. the Chow ring of a product of projective spaces
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from errors import DomainError
from exactnum import ONE, ZERO, GaussianRational, Scalar, render_rational

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def _gauss(value: Scalar) -> GaussianRational:
    return GaussianRational.coerce(value)


def _render_terms(terms: Iterable[Tuple[GaussianRational, str]]) -> str:
    pieces = []
    for coeff, monomial in terms:
        if not monomial:
            text = coeff.render()
        elif coeff.is_one():
            text = monomial
        elif coeff == -1:
            text = f"-{monomial}"
        elif coeff.re != 0 and coeff.im != 0:
            text = f"({coeff.render()})*{monomial}"
        else:
            text = f"{coeff.render()}*{monomial}"
        pieces.append(text)
    if not pieces:
        return "0"
    return "+".join(pieces).replace("+-", "-")


def _power_string(name: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return name
    return f"{name}^{exponent}"


def _monomial_string(names: Sequence[str], exponents: Sequence[int]) -> str:
    return "*".join(p for p in (_power_string(n, e) for n, e in zip(names, exponents)) if p)


# ==================== Univariate polynomials ====================

@dataclass(frozen=True)
class UnivariatePoly:
    """Polynomial over Q(i); coeffs[k] multiplies t^k, no trailing zeros"""
    coeffs: Tuple[GaussianRational, ...] = ()

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar]) -> "UnivariatePoly":
        values = [_gauss(c) for c in coeffs]
        while values and values[-1].is_zero():
            values.pop()
        return cls(tuple(values))

    @classmethod
    def constant(cls, value: Scalar) -> "UnivariatePoly":
        return cls.from_coeffs([value])

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "UnivariatePoly":
        return cls.from_coeffs([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "UnivariatePoly":
        result = ONE_POLY
        for root in roots:
            result = result * cls.from_coeffs([-_gauss(root), 1])
        return result

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UnivariatePoly.from_coeffs(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "UnivariatePoly":
        return UnivariatePoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UnivariatePoly.from_coeffs(self[k] - other[k] for k in range(n))

    def __mul__(self, other):
        if not isinstance(other, UnivariatePoly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return ZERO_POLY
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UnivariatePoly.from_coeffs(out)

    __rmul__ = __mul__

    def scale(self, value: Scalar) -> "UnivariatePoly":
        value = _gauss(value)
        if value.is_zero():
            return ZERO_POLY
        return UnivariatePoly(tuple(c * value for c in self.coeffs))

    def __pow__(self, exponent: int) -> "UnivariatePoly":
        result = ONE_POLY
        for _ in range(exponent):
            result = result * self
        return result

    def monic(self) -> "UnivariatePoly":
        if self.is_zero():
            raise DomainError("the zero polynomial has no monic associate")
        lead = self.leading()
        if lead.is_one():
            return self
        inv = lead.inverse()
        return UnivariatePoly(tuple(c * inv for c in self.coeffs))

    def derivative(self) -> "UnivariatePoly":
        """Formal derivative, coefficient-wise"""
        return UnivariatePoly.from_coeffs(c * k for k, c in enumerate(self.coeffs) if k > 0)

    def __call__(self, point: Scalar) -> GaussianRational:
        point = _gauss(point)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def __divmod__(self, other: "UnivariatePoly"):
        return upoly_divmod(self, other)

    def __floordiv__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        return upoly_divmod(self, other)[0]

    def __mod__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        return upoly_divmod(self, other)[1]

    def render(self, var: str = "t") -> str:
        terms = [(c, _power_string(var, k)) for k, c in reversed(list(enumerate(self.coeffs))) if not c.is_zero()]
        return _render_terms(terms)

    def __str__(self) -> str:
        return self.render()


ZERO_POLY = UnivariatePoly(())
ONE_POLY = UnivariatePoly((ONE,))


def upoly_divmod(a: UnivariatePoly, b: UnivariatePoly) -> Tuple[UnivariatePoly, UnivariatePoly]:
    """Long division a = q*b + r with deg r < deg b"""
    if b.is_zero():
        raise DomainError("polynomial division by zero")
    if a.degree < b.degree:
        return ZERO_POLY, a
    rem = list(a.coeffs)
    db = b.degree
    inv = b.leading().inverse()
    quot = [ZERO] * (a.degree - db + 1)
    bc = b.coeffs
    for k in range(a.degree - db, -1, -1):
        c = rem[k + db]
        if c.is_zero():
            continue
        q = c * inv
        quot[k] = q
        for j in range(db):
            if not bc[j].is_zero():
                rem[k + j] = rem[k + j] - q * bc[j]
        rem[k + db] = ZERO
    return UnivariatePoly.from_coeffs(quot), UnivariatePoly.from_coeffs(rem[:db])


def exact_quotient(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    q, r = upoly_divmod(a, b)
    if not r.is_zero():
        raise DomainError("polynomial division is not exact")
    return q


def upoly_gcd(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    """Monic gcd over Q(i), monic remainder sequence"""
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    if a.degree < b.degree:
        a, b = b, a
    a = a.monic()
    while not b.is_zero():
        b = b.monic()
        a, b = b, upoly_divmod(a, b)[1]
    return a


def upoly_xgcd(a: UnivariatePoly, b: UnivariatePoly) -> Tuple[UnivariatePoly, UnivariatePoly, UnivariatePoly]:
    """(g, u, v) with u*a + v*b = g, g monic"""
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = ONE_POLY, ZERO_POLY
    t0, t1 = ZERO_POLY, ONE_POLY
    while not r1.is_zero():
        q, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0.leading().inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def squarefree_part(g: UnivariatePoly) -> UnivariatePoly:
    """Monic g / gcd(g, g'); no repeated roots"""
    if g.is_zero():
        raise DomainError("squarefree part of the zero polynomial")
    common = upoly_gcd(g, g.derivative())
    return exact_quotient(g.monic(), common)


# ==================== Binary forms ====================

@dataclass(frozen=True)
class BinaryForm:
    """Form of the given degree in (s,t); coeffs[k] multiplies s^(d-k) t^k"""
    degree: int
    coeffs: Tuple[GaussianRational, ...]

    def __post_init__(self):
        if self.degree < 0 or len(self.coeffs) != self.degree + 1:
            raise DomainError(f"binary form of degree {self.degree} needs {self.degree + 1} coefficients")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Scalar]) -> "BinaryForm":
        values = tuple(_gauss(c) for c in coeffs)
        return cls(len(values) - 1, values)

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (ZERO,) * (degree + 1))

    @classmethod
    def linear(cls, a: Scalar, b: Scalar) -> "BinaryForm":
        """a*s + b*t"""
        return cls.from_coeffs([a, b])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise DomainError("cannot add binary forms of different degrees")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise DomainError("cannot subtract binary forms of different degrees")
        return BinaryForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            value = _gauss(other)
            return BinaryForm(self.degree, tuple(c * value for c in self.coeffs))
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BinaryForm":
        result = BinaryForm(0, (ONE,))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def dehomogenize(self) -> UnivariatePoly:
        """G(1, t)"""
        return UnivariatePoly.from_coeffs(self.coeffs)

    def vanishes_at_infinity(self) -> bool:
        """True when s divides G, i.e. G(0, 1) = 0"""
        return self.coeffs[-1].is_zero()

    def render(self) -> str:
        d = self.degree
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms.append((c, _monomial_string(("s", "t"), (d - k, k))))
        return _render_terms(terms)

    def __str__(self) -> str:
        return self.render()


def binary_distinct_roots(G: BinaryForm) -> int:
    """Number of distinct points of P^1 where G vanishes"""
    if G.is_zero():
        raise DomainError("the zero form vanishes everywhere")
    g = G.dehomogenize()
    count = g.degree - upoly_gcd(g, g.derivative()).degree if g.degree > 0 else 0
    if g.degree < G.degree:
        count += 1
    return count


# ==================== Ternary forms ====================

Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class TernaryForm:
    """Form in (x,y,z); terms are sorted (exponent triple, nonzero coefficient) pairs"""
    degree: int
    terms: Tuple[Tuple[Triple, GaussianRational], ...] = ()

    def __post_init__(self):
        for (a, b, c), coeff in self.terms:
            if a + b + c != self.degree or min(a, b, c) < 0:
                raise DomainError(f"term x^{a} y^{b} z^{c} does not have degree {self.degree}")
            if coeff.is_zero():
                raise DomainError("ternary forms store no explicit zero coefficients")

    @classmethod
    def from_dict(cls, degree: int, terms: Mapping[Triple, Scalar]) -> "TernaryForm":
        cleaned = []
        for exps, coeff in terms.items():
            value = _gauss(coeff)
            if not value.is_zero():
                cleaned.append((tuple(exps), value))
        cleaned.sort(reverse=True)
        return cls(degree, tuple(cleaned))

    @classmethod
    def variable(cls, index: int) -> "TernaryForm":
        exps = [0, 0, 0]
        exps[index] = 1
        return cls(1, ((tuple(exps), ONE),))

    def as_dict(self) -> Dict[Triple, GaussianRational]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if self.degree != other.degree:
            raise DomainError("cannot add ternary forms of different degrees")
        acc = self.as_dict()
        for exps, coeff in other.terms:
            acc[exps] = acc.get(exps, ZERO) + coeff
        return TernaryForm.from_dict(self.degree, acc)

    def __neg__(self) -> "TernaryForm":
        return TernaryForm(self.degree, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TernaryForm):
            return TernaryForm.from_dict(self.degree, {e: c * _gauss(other) for e, c in self.terms})
        acc: Dict[Triple, GaussianRational] = {}
        for (a1, b1, c1), u in self.terms:
            for (a2, b2, c2), v in other.terms:
                key = (a1 + a2, b1 + b2, c1 + c2)
                acc[key] = acc.get(key, ZERO) + u * v
        return TernaryForm.from_dict(self.degree + other.degree, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "TernaryForm":
        result = TernaryForm(0, (((0, 0, 0), ONE),))
        for _ in range(exponent):
            result = result * self
        return result

    def partial(self, index: int) -> "TernaryForm":
        """Partial derivative in x (0), y (1) or z (2)"""
        if self.degree == 0:
            return TernaryForm(0, ())
        acc = {}
        for exps, coeff in self.terms:
            if exps[index] == 0:
                continue
            lowered = list(exps)
            lowered[index] -= 1
            acc[tuple(lowered)] = coeff * exps[index]
        return TernaryForm.from_dict(self.degree - 1, acc)

    def evaluate(self, point: Sequence[Scalar]) -> GaussianRational:
        x, y, z = (_gauss(v) for v in point)
        acc = ZERO
        for (a, b, c), coeff in self.terms:
            acc = acc + coeff * (x ** a) * (y ** b) * (z ** c)
        return acc

    def is_proportional_to(self, other: "TernaryForm") -> bool:
        if self.degree != other.degree or self.is_zero() or other.is_zero():
            return False
        mine, theirs = self.as_dict(), other.as_dict()
        if mine.keys() != theirs.keys():
            return False
        first = next(iter(mine))
        ratio = mine[first] / theirs[first]
        return all(mine[e] == ratio * theirs[e] for e in mine)

    def substitute_linear(self, images: Sequence["TernaryForm"]) -> "TernaryForm":
        """F(L_x, L_y, L_z) for linear forms L"""
        if any(L.degree != 1 for L in images):
            raise DomainError("linear substitution needs degree-1 forms")
        powers = [[TernaryForm(0, (((0, 0, 0), ONE),))] for _ in range(3)]
        for k in range(3):
            for _ in range(self.degree):
                powers[k].append(powers[k][-1] * images[k])
        acc = TernaryForm(self.degree, ())
        for (a, b, c), coeff in self.terms:
            acc = acc + powers[0][a] * powers[1][b] * powers[2][c] * coeff
        return acc

    def render(self) -> str:
        return _render_terms((c, _monomial_string(("x", "y", "z"), e)) for e, c in self.terms)

    def __str__(self) -> str:
        return self.render()


def ternary_substitute_param(F: TernaryForm, phi_x: BinaryForm, phi_y: BinaryForm, phi_z: BinaryForm) -> BinaryForm:
    """F(phi_x, phi_y, phi_z) as a binary form of degree deg(F) * e"""
    e = phi_x.degree
    if phi_y.degree != e or phi_z.degree != e:
        raise DomainError("parametrization components must share a common degree")
    d = F.degree
    powers = []
    for phi in (phi_x, phi_y, phi_z):
        needed = max((exps[len(powers)] for exps, _ in F.terms), default=0)
        row = [BinaryForm(0, (ONE,))]
        for _ in range(needed):
            row.append(row[-1] * phi)
        powers.append(row)
    acc = BinaryForm.zero(d * e)
    for (a, b, c), coeff in F.terms:
        acc = acc + powers[0][a] * powers[1][b] * powers[2][c] * coeff
    return acc


# ==================== Resultants ====================

def resultant(a: Sequence[UnivariatePoly], b: Sequence[UnivariatePoly]) -> UnivariatePoly:
    """
    Res_y(a, b) for polynomials in y whose coefficients are polynomials in x.

    a[k] is the coefficient of y^k; the formal degrees are len(a)-1 and len(b)-1.
    The Sylvester determinant is evaluated by fraction-free (Bareiss) elimination.
    """
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        raise DomainError("resultant needs two polynomials")
    size = m + n
    if size == 0:
        return ONE_POLY
    rows = []
    for shift in range(n):
        row = [ZERO_POLY] * size
        for k in range(m + 1):
            row[shift + k] = a[m - k]
        rows.append(row)
    for shift in range(m):
        row = [ZERO_POLY] * size
        for k in range(n + 1):
            row[shift + k] = b[n - k]
        rows.append(row)
    return _bareiss_determinant(rows)


def _bareiss_determinant(matrix: List[List[UnivariatePoly]]) -> UnivariatePoly:
    size = len(matrix)
    sign = 1
    previous = ONE_POLY
    for k in range(size - 1):
        if matrix[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, size) if not matrix[r][k].is_zero()), None)
            if pivot_row is None:
                return ZERO_POLY
            matrix[k], matrix[pivot_row] = matrix[pivot_row], matrix[k]
            sign = -sign
        pivot = matrix[k][k]
        for i in range(k + 1, size):
            lead = matrix[i][k]
            for j in range(k + 1, size):
                numerator = matrix[i][j] * pivot - lead * matrix[k][j]
                matrix[i][j] = exact_quotient(numerator, previous)
            matrix[i][k] = ZERO_POLY
        previous = pivot
    det = matrix[size - 1][size - 1]
    return det if sign == 1 else -det


# ==================== Truncated multigraded series ====================

@dataclass(frozen=True)
class _Layout:
    caps: Tuple[int, ...]
    strides: Tuple[int, ...]
    size: int
    exponents: Tuple[Exponent, ...]
    keys: Tuple[int, ...]   # exponents packed into fixed-width bit fields
    high: int               # top bit of every field
    offset: int             # per field: 2^(width-1) - 1 - cap


@lru_cache(maxsize=32)
def _layout(caps: Tuple[int, ...]) -> _Layout:
    p = len(caps)
    strides = [1] * p
    for i in range(p - 2, -1, -1):
        strides[i] = strides[i + 1] * (caps[i + 1] + 1)
    size = prod(c + 1 for c in caps)
    width = max(2, max(caps, default=0).bit_length() + 1)
    exponents = tuple(cartesian(*(range(c + 1) for c in caps)))
    keys = tuple(sum(e << (width * i) for i, e in enumerate(exps)) for exps in exponents)
    high = sum(1 << (width * i + width - 1) for i in range(p))
    offset = sum(((1 << (width - 1)) - 1 - cap) << (width * i) for i, cap in enumerate(caps))
    return _Layout(tuple(caps), tuple(strides), size, exponents, keys, high, offset)


@dataclass(frozen=True)
class TruncatedMultiSeries:
    """Series in h_1..h_p over Q with h_i^(cap_i + 1) = 0; dense row-major table"""
    caps: Tuple[int, ...]
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.caps):
            raise DomainError("caps must be non-negative")
        if len(self.coefficients) != _layout(tuple(self.caps)).size:
            raise DomainError("coefficient table does not match the caps")

    # ----- constructors -----

    @classmethod
    def _from_values(cls, caps: Tuple[int, ...], values: Sequence) -> "TruncatedMultiSeries":
        return cls(tuple(caps), tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values))

    @classmethod
    def zero(cls, caps: Sequence[int]) -> "TruncatedMultiSeries":
        caps = tuple(caps)
        return cls._from_values(caps, [0] * _layout(caps).size)

    @classmethod
    def one(cls, caps: Sequence[int]) -> "TruncatedMultiSeries":
        return cls.from_terms(caps, {(0,) * len(caps): 1})

    @classmethod
    def from_terms(cls, caps: Sequence[int], terms: Mapping[Exponent, object]) -> "TruncatedMultiSeries":
        """Terms beyond the caps are dropped"""
        caps = tuple(caps)
        layout = _layout(caps)
        values = [0] * layout.size
        for exps, coeff in terms.items():
            if len(exps) != len(caps):
                raise DomainError(f"exponent {exps} does not have {len(caps)} entries")
            if any(e < 0 for e in exps):
                raise DomainError(f"negative exponent {exps}")
            if any(e > c for e, c in zip(exps, caps)):
                continue
            values[_flat(layout, exps)] += Fraction(coeff)
        return cls._from_values(caps, values)

    @classmethod
    def linear(cls, caps: Sequence[int], constant, weights: Sequence) -> "TruncatedMultiSeries":
        """constant + sum_i weights[i] * h_i"""
        p = len(caps)
        terms = {(0,) * p: constant}
        for i, w in enumerate(weights):
            exps = [0] * p
            exps[i] = 1
            terms[tuple(exps)] = w
        return cls.from_terms(caps, terms)

    @classmethod
    def univariate(cls, caps: Sequence[int], var: int, coeffs: Sequence) -> "TruncatedMultiSeries":
        """sum_k coeffs[k] * h_var^k"""
        p = len(caps)
        terms = {}
        for k, c in enumerate(coeffs):
            exps = [0] * p
            exps[var] = k
            terms[tuple(exps)] = c
        return cls.from_terms(caps, terms)

    # ----- access -----

    @property
    def var_count(self) -> int:
        return len(self.caps)

    def constant_term(self) -> Fraction:
        return self.coefficients[0]

    def items(self):
        """(exponent, coefficient) for every nonzero entry"""
        layout = _layout(self.caps)
        return [(layout.exponents[k], c) for k, c in enumerate(self.coefficients) if c]

    def __add__(self, other: "TruncatedMultiSeries") -> "TruncatedMultiSeries":
        _check_caps(self, other)
        return TruncatedMultiSeries(self.caps, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "TruncatedMultiSeries") -> "TruncatedMultiSeries":
        _check_caps(self, other)
        return TruncatedMultiSeries(self.caps, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "TruncatedMultiSeries":
        return TruncatedMultiSeries(self.caps, tuple(-c for c in self.coefficients))

    def scale(self, value) -> "TruncatedMultiSeries":
        value = Fraction(value)
        return TruncatedMultiSeries(self.caps, tuple(c * value for c in self.coefficients))

    def __mul__(self, other):
        if isinstance(other, TruncatedMultiSeries):
            return ts_mul(self, other)
        return self.scale(other)

    def __pow__(self, exponent: int) -> "TruncatedMultiSeries":
        result = TruncatedMultiSeries.one(self.caps)
        for _ in range(exponent):
            result = ts_mul(result, self)
        return result

    def render(self) -> str:
        names = [f"h{i + 1}" for i in range(self.var_count)]
        terms = [(GaussianRational(c), _monomial_string(names, e)) for e, c in self.items()]
        return _render_terms(terms)

    def __str__(self) -> str:
        return self.render()


def _flat(layout: _Layout, exps: Sequence[int]) -> int:
    return sum(e * s for e, s in zip(exps, layout.strides))


def _check_caps(a: TruncatedMultiSeries, b: TruncatedMultiSeries):
    if a.caps != b.caps:
        raise DomainError(f"series caps differ: {a.caps} vs {b.caps}")


def _working_values(*series: TruncatedMultiSeries):
    """Plain ints when every coefficient is integral, Fractions otherwise"""
    if all(c.denominator == 1 for s in series for c in s.coefficients):
        return [[c.numerator for c in s.coefficients] for s in series], True
    return [list(s.coefficients) for s in series], False


def ts_mul(a: TruncatedMultiSeries, b: TruncatedMultiSeries) -> TruncatedMultiSeries:
    """Truncated product; exponents beyond any cap are discarded"""
    _check_caps(a, b)
    layout = _layout(a.caps)
    (va, vb), _ = _working_values(a, b)
    keys, high, offset = layout.keys, layout.high, layout.offset
    sparse_b = [(j, keys[j], y) for j, y in enumerate(vb) if y]
    out = [0] * layout.size
    for i, x in enumerate(va):
        if not x:
            continue
        ki = keys[i] + offset
        for j, kj, y in sparse_b:
            # a field overflows into its top bit exactly when e_i + f_i > cap_i
            if (ki + kj) & high:
                continue
            out[i + j] += x * y
    return TruncatedMultiSeries._from_values(a.caps, out)


def ts_divide(a: TruncatedMultiSeries, d: TruncatedMultiSeries) -> TruncatedMultiSeries:
    """The truncated series b with d*b = a; d needs a nonzero constant term"""
    _check_caps(a, d)
    layout = _layout(a.caps)
    (va, vd), integral = _working_values(a, d)
    d0 = vd[0]
    if not d0:
        raise DomainError("series with zero constant term is not invertible")
    keys, high = layout.keys, layout.high
    sparse_d = [(j, keys[j], y) for j, y in enumerate(vd) if y and j > 0]
    unit = integral and d0 in (1, -1)
    if integral and not unit:
        va = [Fraction(v) for v in va]
        vd = [Fraction(v) for v in vd]
        d0 = vd[0]
        sparse_d = [(j, k, Fraction(y)) for j, k, y in sparse_d]
    out = [0] * layout.size
    for e in range(layout.size):
        acc = va[e]
        ke = keys[e] | high
        for j, kj, y in sparse_d:
            # a borrow clears the top bit of a field exactly when f_i > e_i
            if (ke - kj) & high != high:
                continue
            acc -= y * out[e - j]
        out[e] = acc * d0 if unit else acc / d0
    return TruncatedMultiSeries._from_values(a.caps, out)


def ts_inverse(a: TruncatedMultiSeries) -> TruncatedMultiSeries:
    """b with ts_mul(a, b) = 1 up to the caps"""
    return ts_divide(TruncatedMultiSeries.one(a.caps), a)


def ts_coefficient(a: TruncatedMultiSeries, e: Sequence[int]) -> Fraction:
    """Coefficient of h^e"""
    e = tuple(e)
    if len(e) != a.var_count or any(x < 0 or x > c for x, c in zip(e, a.caps)):
        raise DomainError(f"exponent {e} is outside the caps {a.caps}")
    return a.coefficients[_flat(_layout(a.caps), e)]


def ts_product_coefficient(a: TruncatedMultiSeries, b: TruncatedMultiSeries, e: Sequence[int]) -> Fraction:
    """Coefficient of h^e in a*b, without forming the product"""
    _check_caps(a, b)
    e = tuple(e)
    if len(e) != a.var_count or any(x < 0 or x > c for x, c in zip(e, a.caps)):
        raise DomainError(f"exponent {e} is outside the caps {a.caps}")
    layout = _layout(a.caps)
    (va, vb), integral = _working_values(a, b)
    target = _flat(layout, e)
    kt = sum(x << (i * _field_width(layout)) for i, x in enumerate(e)) | layout.high
    keys, high = layout.keys, layout.high
    acc = 0
    for j, x in enumerate(va):
        if not x or (kt - keys[j]) & high != high:
            continue
        acc += x * vb[target - j]
    return Fraction(acc)


def _field_width(layout: _Layout) -> int:
    return max(2, max(layout.caps, default=0).bit_length() + 1)


def render_rational_vector(values: Sequence[Fraction]) -> str:
    return ",".join(render_rational(v) for v in values)
