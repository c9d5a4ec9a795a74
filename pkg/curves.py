"""
ED degrees of plane curves and parametrized rational curves

- plane_curve_edd: Edd(C) = d(d-2) + R, R = number of distinct roots of the
  pullback of F to the isotropic conic (s^2-t^2 : 2st : i(s^2+t^2))
- rational_curve_edd: Edd(C) = e + #(Q∩C) - 2 for a birational parametrization
- smoothness_check_plane: exact singular-point test by resultants and dynamic
  evaluation over Q(i)
- numeric_root_cluster_oracle: floating point root count, test support only
"""

import concurrent.futures
import logging
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import MAX_PARALLEL_WORKERS, ORACLE_TOLERANCE, get_smoothness_bound
from errors import DomainError, EddError, PreconditionError, UnsupportedError
from exactnum import I, ZERO
from models import EddMethod, EddReport, PlaneCurveInput, RationalCurveInput
from polyring import (
    BinaryForm,
    TernaryForm,
    UnivariatePoly,
    binary_distinct_roots,
    resultant,
    squarefree_part,
    ternary_substitute_param,
    upoly_gcd,
    upoly_xgcd,
)

logger = logging.getLogger(__name__)

# (s^2 - t^2, 2st, i(s^2 + t^2))
ISOTROPIC_PARAMETRIZATION = (
    BinaryForm.from_coeffs([1, 0, -1]),
    BinaryForm.from_coeffs([0, 2, 0]),
    BinaryForm.from_coeffs([I, 0, I]),
)

ISOTROPIC_CONIC = TernaryForm.from_dict(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})


class InconclusiveOracleError(EddError):
    """Numeric clusters too close to tell apart"""
    kind = "inconclusive"


def isotropic_pullback(F: TernaryForm) -> BinaryForm:
    """F(s^2 - t^2, 2st, i(s^2 + t^2)); the zero form when the isotropic conic divides F"""
    if F.is_zero():
        raise DomainError("cannot pull back the zero form")
    return ternary_substitute_param(F, *ISOTROPIC_PARAMETRIZATION)


# ==================== Plane curves ====================

def plane_curve_edd(curve: PlaneCurveInput, include_pullback: bool = False) -> EddReport:
    F = curve.F
    d = F.degree
    G = isotropic_pullback(F)
    inputs = {"poly": F, "assume_smooth": curve.assume_smooth}

    if G.is_zero():
        if d == 2 and F.is_proportional_to(ISOTROPIC_CONIC):
            logger.info("[Curves] curve is the isotropic conic itself, Edd = 0")
            return EddReport(
                value=0,
                method=EddMethod.PLANE_CURVE,
                inputs=inputs,
                intermediates={"d": d, "R": 0},
                warnings=["the curve is contained in the isotropic quadric"]
            )
        raise PreconditionError("the isotropic conic divides F: the curve is reducible or singular")

    warnings = []
    bound = get_smoothness_bound()
    if curve.assume_smooth:
        smoothness = "assumed"
        if d > bound:
            warnings.append(f"smoothness not verified above degree {bound}")
    elif d > bound:
        raise UnsupportedError(f"smoothness check is limited to degree {bound}, got {d}; pass --assume-smooth")
    elif not smoothness_check_plane(F, bound):
        raise PreconditionError("the curve is singular")
    else:
        smoothness = "checked"

    R = binary_distinct_roots(G)
    if R > 2 * d:
        raise DomainError(f"internal error: {R} distinct roots for a form of degree {2 * d}")
    value = d * (d - 2) + R
    logger.info(f"[Curves] plane curve of degree {d}: R = {R}, Edd = {value}")

    intermediates = {"d": d, "R": R, "gEdd": d * d, "smoothness": smoothness}
    if include_pullback:
        intermediates["pullback"] = G
    return EddReport(
        value=value,
        method=EddMethod.PLANE_CURVE,
        inputs=inputs,
        intermediates=intermediates,
        warnings=warnings
    )


# ==================== Rational curves ====================

def _has_base_points(phi: Sequence[BinaryForm]) -> bool:
    if all(f.vanishes_at_infinity() for f in phi):
        return True
    affine = [f.dehomogenize() for f in phi if not f.is_zero()]
    common = affine[0]
    for g in affine[1:]:
        common = upoly_gcd(common, g)
        if common.degree == 0:
            return False
    return common.degree > 0


def rational_curve_edd(curve: RationalCurveInput) -> EddReport:
    """Edd = e + #(distinct roots of sum_j q_j phi_j^2) - 2"""
    if _has_base_points(curve.phi):
        raise PreconditionError("the parametrization components share a common factor (base point)")
    e = curve.degree
    total = BinaryForm.zero(2 * e)
    for q, f in zip(curve.quadric_weights, curve.phi):
        total = total + f * f * q
    inputs = {"phi": list(curve.phi), "quadric_weights": list(curve.quadric_weights)}

    if total.is_zero():
        logger.info("[Curves] parametrized curve lies on the isotropic quadric")
        return EddReport(
            value=0,
            method=EddMethod.RATIONAL_CURVE,
            inputs=inputs,
            intermediates={"e": e, "num_qc": 0},
            warnings=["the curve is contained in the isotropic quadric"]
        )

    num_qc = binary_distinct_roots(total)
    value = e + num_qc - 2
    return EddReport(
        value=value,
        method=EddMethod.RATIONAL_CURVE,
        inputs=inputs,
        intermediates={"e": e, "num_qc": num_qc, "chi_c": 2}
    )


def rnc_input(n: int) -> RationalCurveInput:
    """Rational normal curve (s^(n-1), s^(n-2) t, ..., t^(n-1)) in P^(n-1), weights C(n-1, j)"""
    if n < 2:
        raise DomainError(f"rational normal curve needs n >= 2, got {n}")
    e = n - 1
    phi = []
    for j in range(n):
        coeffs = [0] * (e + 1)
        coeffs[j] = 1
        phi.append(BinaryForm.from_coeffs(coeffs))
    weights = []
    c = 1
    for j in range(n):
        weights.append(c)
        c = c * (e - j) // (j + 1)
    return RationalCurveInput(tuple(phi), tuple(weights))


# ==================== Smoothness ====================

YPoly = List[UnivariatePoly]   # coefficients of y^0, y^1, ... in Q(i)[x]


@dataclass
class _Split:
    parts: Tuple[UnivariatePoly, UnivariatePoly]


def _trim(p: YPoly) -> YPoly:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _chart_z1(form: TernaryForm) -> YPoly:
    """form(x, y, 1) as a polynomial in y over Q(i)[x]"""
    rows: Dict[int, Dict[int, object]] = {}
    for (a, b, _), coeff in form.terms:
        rows.setdefault(b, {})[a] = coeff
    out = []
    for b in range(max(rows, default=-1) + 1):
        row = rows.get(b, {})
        out.append(UnivariatePoly.from_coeffs(row.get(a, ZERO) for a in range(max(row, default=-1) + 1)))
    return _trim(out)


def _chart_z0(form: TernaryForm) -> UnivariatePoly:
    """form(x, 1, 0)"""
    row = {a: coeff for (a, _, c), coeff in form.terms if c == 0}
    return UnivariatePoly.from_coeffs(row.get(a, ZERO) for a in range(max(row, default=-1) + 1))


def _reduce(p: YPoly, modulus: UnivariatePoly) -> YPoly:
    return _trim([c % modulus for c in p])


def _invert_mod(c: UnivariatePoly, modulus: UnivariatePoly) -> Union[UnivariatePoly, _Split]:
    g, u, _ = upoly_xgcd(c, modulus)
    if g.degree == 0:
        return u % modulus
    return _Split((g, modulus // g))


def _ygcd(modulus: UnivariatePoly, a: YPoly, b: YPoly) -> Union[YPoly, _Split]:
    """gcd in (Q(i)[x]/modulus)[y], or a splitting of the modulus"""
    a, b = _reduce(a, modulus), _reduce(b, modulus)
    while b:
        inverse = _invert_mod(b[-1], modulus)
        if isinstance(inverse, _Split):
            return inverse
        b = [(c * inverse) % modulus for c in b]
        a = _yrem_monic(a, b, modulus)
        a, b = b, a
    return a


def _yrem_monic(a: YPoly, b: YPoly, modulus: UnivariatePoly) -> YPoly:
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db:
        lead = r[-1]
        shift = len(r) - 1 - db
        for k in range(db):
            r[shift + k] = (r[shift + k] - lead * b[k]) % modulus
        r.pop()
        _trim(r)
    return r


def _common_y_root(modulus: UnivariatePoly, polys: Sequence[YPoly]) -> bool:
    """Whether some root x0 of the squarefree modulus gives the polys a common root in y"""
    current = _reduce(polys[0], modulus)
    for other in polys[1:]:
        outcome = _ygcd(modulus, current, other)
        if isinstance(outcome, _Split):
            logger.debug(f"[Curves] splitting modulus of degree {modulus.degree}")
            return any(_common_y_root(part, polys) for part in outcome.parts)
        current = outcome
        if len(current) <= 1:
            return False
    return len(current) > 1


def _general_position(partials: Sequence[TernaryForm], degree: int) -> Tuple[int, int]:
    """(a, b) with every partial nonzero at (a, 1, b)"""
    span = 3 * degree + 1
    for a, b in cartesian(range(1, span + 1), repeat=2):
        if all(not P.evaluate((a, 1, b)).is_zero() for P in partials):
            return a, b
    raise DomainError("no point in general position found")


def smoothness_check_plane(F: TernaryForm, bound: Optional[int] = None) -> bool:
    """
    True iff F_x, F_y, F_z have no common zero in P^2.

    After a change of coordinates putting (0:1:0) off every partial, the
    partials are monic-like in y. Common zeros with z = 1 have x among the
    roots of gcd(Res_y(A, B), Res_y(A, C)); the y-gcd of A, B, C over that
    modulus decides them, splitting the modulus on zero divisors. Zeros with
    z = 0 then have y = 1 and reduce to a univariate gcd.
    """
    bound = get_smoothness_bound() if bound is None else bound
    d = F.degree
    if d > bound:
        raise UnsupportedError(f"smoothness check is limited to degree {bound}, got {d}")
    if F.is_zero():
        raise DomainError("the zero form defines no curve")
    if d == 1:
        return True
    partials = [F.partial(k) for k in range(3)]
    if any(P.is_zero() for P in partials):
        return False

    a, b = _general_position(partials, d)
    x, y, z = (TernaryForm.variable(k) for k in range(3))
    moved = F.substitute_linear([x + y * a, y, z + y * b])
    A, B, C = (moved.partial(k) for k in range(3))

    # chart z = 1
    ya, yb, yc = _chart_z1(A), _chart_z1(B), _chart_z1(C)
    r1 = resultant(ya, yb)
    r2 = resultant(ya, yc)
    if r1.is_zero() or r2.is_zero():
        # a common curve component meets the third partial
        return False
    g = upoly_gcd(r1, r2)
    if g.degree > 0 and _common_y_root(squarefree_part(g), [ya, yb, yc]):
        return False

    # the vertex (1:0:0)
    if all(P.evaluate((1, 0, 0)).is_zero() for P in (A, B, C)):
        return False

    # chart z = 0, y = 1
    tail = [p for p in (_chart_z0(A), _chart_z0(B), _chart_z0(C)) if not p.is_zero()]
    if not tail:
        return False
    common = tail[0]
    for p in tail[1:]:
        common = upoly_gcd(common, p)
    return common.degree == 0


# ==================== Numeric oracle ====================

def _chordal(u: complex, v: complex) -> float:
    return abs(u - v) / ((1 + abs(u) ** 2) ** 0.5 * (1 + abs(v) ** 2) ** 0.5)


def numeric_root_cluster_oracle(G: BinaryForm, tol: Optional[float] = None) -> int:
    """Distinct roots of G on P^1 by companion-matrix eigenvalues and chordal clustering"""
    tol = ORACLE_TOLERANCE if tol is None else tol
    if G.is_zero():
        raise DomainError("the zero form vanishes everywhere")
    g = G.dehomogenize()
    at_infinity = g.degree < G.degree
    representatives: List[complex] = []
    if g.degree > 0:
        coeffs = np.array([complex(float(c.re), float(c.im)) for c in reversed(g.coeffs)])
        for root in np.roots(coeffs):
            if not any(_chordal(root, rep) <= tol for rep in representatives):
                representatives.append(complex(root))

    for i, u in enumerate(representatives):
        if at_infinity and 1 / (1 + abs(u) ** 2) ** 0.5 <= 10 * tol:
            raise InconclusiveOracleError(f"root {u} is too close to infinity")
        for v in representatives[i + 1:]:
            if _chordal(u, v) <= 10 * tol:
                raise InconclusiveOracleError(f"roots {u} and {v} are within {10 * tol}")
    return len(representatives) + (1 if at_infinity else 0)


# ==================== Fermat curves ====================

def fermat_curve(d: int) -> TernaryForm:
    if d < 1:
        raise DomainError(f"Fermat curve needs d >= 1, got {d}")
    return TernaryForm.from_dict(d, {(d, 0, 0): 1, (0, d, 0): 1, (0, 0, d): 1})


def _fermat_report(d: int) -> EddReport:
    assume = d > get_smoothness_bound()
    return plane_curve_edd(PlaneCurveInput(fermat_curve(d), assume_smooth=assume))


def fermat_sweep(degrees: Sequence[int], max_workers: Optional[int] = None) -> List[EddReport]:
    """plane_curve_edd of x^d + y^d + z^d for each d, results in input order"""
    max_workers = MAX_PARALLEL_WORKERS if max_workers is None else max_workers
    degrees = list(degrees)
    if max_workers <= 1 or len(degrees) <= 1:
        return [_fermat_report(d) for d in degrees]
    logger.info(f"[Curves] Fermat sweep over {len(degrees)} degrees with {max_workers} workers")
    with concurrent.futures.ProcessPoolExecutor(max_workers=max_workers) as executor:
        return list(executor.map(_fermat_report, degrees))
