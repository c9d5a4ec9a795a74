"""
ED degrees of Segre and Segre-Veronese varieties

Everything reduces to coefficient extraction in the Chow ring of
X = P^(m_1-1) x ... x P^(m_p-1), i.e. in TruncatedMultiSeries with caps m_i - 1:

- snc_edd: the normal-crossings evaluator, the single core kernel
- edd_segre / edd_segre_veronese: thin wrappers choosing the divisors
- edd_fo: the independent product-of-quotients count, used as a cross-check
"""

import logging
from math import comb
from typing import List, Optional, Sequence

from errors import DomainError, UnsupportedError
from exactnum import as_integer
from models import Coordinates, EddMethod, EddReport, ProductSpec
from polyring import (
    TruncatedMultiSeries,
    ts_divide,
    ts_mul,
    ts_product_coefficient,
)

logger = logging.getLogger(__name__)

PRODUCT_METHODS = ("segre", "fo", "both")


def _caps(dims: Sequence[int]):
    if not dims:
        raise DomainError("a product needs at least one factor")
    if any(m < 1 for m in dims):
        raise DomainError(f"factor sizes must be positive: {tuple(dims)}")
    return tuple(m - 1 for m in dims)


def _cotangent_class(caps, dims: Sequence[int]) -> TruncatedMultiSeries:
    """c(T*X) = prod_i (1 - h_i)^(m_i)"""
    result = TruncatedMultiSeries.one(caps)
    for i, m in enumerate(dims):
        factor = TruncatedMultiSeries.univariate(caps, i, [(-1) ** k * comb(m, k) for k in range(m + 1)])
        result = ts_mul(result, factor)
    return result


def snc_edd(dims: Sequence[int], weights: Sequence[int], divisor_multidegrees: Sequence[Sequence[int]]) -> int:
    """
    ∫ c(T*X) / ((1 - H) prod_i (1 - D_i)) ∩ [X] with H = sum_i weights_i h_i.

    The divisors D_i form a normal-crossings union with Q∩X; each is given by
    its multidegree vector.
    """
    caps = _caps(dims)
    p = len(caps)
    if len(weights) != p:
        raise DomainError(f"{len(weights)} weights given for {p} factors")
    for D in divisor_multidegrees:
        if len(D) != p:
            raise DomainError(f"divisor multidegree {tuple(D)} does not have {p} entries")

    numerator = _cotangent_class(caps, dims)
    # divide one linear factor at a time; each divisor stays sparse
    quotient = TruncatedMultiSeries.one(caps)
    for linear in [weights, *divisor_multidegrees]:
        factor = TruncatedMultiSeries.linear(caps, 1, [-w for w in linear])
        quotient = ts_divide(quotient, factor)

    coefficient = ts_product_coefficient(numerator, quotient, caps)
    value = as_integer(coefficient, "normal-crossings coefficient")
    logger.debug(f"[Products] snc dims={tuple(dims)} divisors={len(divisor_multidegrees)} -> {value}")
    return value


def _unit_divisors(p: int, scales: Sequence[int]) -> List[List[int]]:
    divisors = []
    for i in range(p):
        D = [0] * p
        D[i] = scales[i]
        divisors.append(D)
    return divisors


def edd_segre(dims: Sequence[int]) -> int:
    """Coefficient of prod h_i^(m_i-1) in prod (1-h_i)^(m_i)/(1-2h_i) / (1 - sum h_i)"""
    p = len(dims)
    return snc_edd(dims, [1] * p, _unit_divisors(p, [2] * p))


def edd_fo(dims: Sequence[int], weights: Optional[Sequence[int]] = None) -> int:
    """
    Coefficient of prod z_i^(m_i-1) in prod_i (zhat_i^(m_i) - z_i^(m_i)) / (zhat_i - z_i),
    zhat_i = sum_j weights_j z_j - z_i.

    Each quotient is expanded as sum_k zhat_i^(m_i-1-k) z_i^k. The factors are
    homogeneous, so the partial products stay sparse; the largest factor is
    paired against the rest at the final coefficient only.
    """
    caps = _caps(dims)
    p = len(caps)
    weights = list(weights) if weights else [1] * p
    if len(weights) != p:
        raise DomainError(f"{len(weights)} weights given for {p} factors")

    factors = []
    for i, m in enumerate(dims):
        zhat = TruncatedMultiSeries.linear(caps, 0, [w - 1 if j == i else w for j, w in enumerate(weights)])
        # Horner: S <- zhat*S + z_i^j
        S = TruncatedMultiSeries.one(caps)
        for j in range(1, m):
            power = TruncatedMultiSeries.univariate(caps, i, [0] * j + [1])
            S = ts_mul(S, zhat) + power
        factors.append(S)

    factors.sort(key=lambda s: len(s.items()))
    last = factors.pop()
    partial = TruncatedMultiSeries.one(caps)
    for S in factors:
        partial = ts_mul(partial, S)
    value = as_integer(ts_product_coefficient(partial, last, caps), "product-of-quotients coefficient")
    logger.debug(f"[Products] fo dims={tuple(dims)} weights={tuple(weights)} -> {value}")
    return value


def fo_closed_form(m: int, omega: int) -> int:
    """((omega-1)^m - 1) / (omega - 2), and m at omega = 2"""
    if m < 1 or omega < 1:
        raise DomainError(f"closed form needs m >= 1 and omega >= 1, got m={m}, omega={omega}")
    if omega == 2:
        return m
    return ((omega - 1) ** m - 1) // (omega - 2)


def edd_segre_veronese(spec: ProductSpec) -> int:
    """
    Coefficient of prod h_i^(m_i-1) in prod (1-h_i)^(m_i)/(1 - c_i h_i) / (1 - sum omega_i h_i),
    with c_i = 2 omega_i in general coordinates and c_i = 2 in invariant coordinates.
    """
    p = spec.factor_count
    if spec.coords == Coordinates.INVARIANT:
        scales = [2] * p
    else:
        scales = [2 * w for w in spec.weights]
    return snc_edd(spec.dims, spec.weights, _unit_divisors(p, scales))


def product_edd(spec: ProductSpec, method: str = "segre") -> EddReport:
    """Run the requested product formula(s); 'both' fails loudly on disagreement"""
    if method not in PRODUCT_METHODS:
        raise DomainError(f"unknown product method {method!r}, expected one of {PRODUCT_METHODS}")
    fo_valid = spec.coords == Coordinates.INVARIANT or spec.is_plain_segre()
    if method in ("fo", "both") and not fo_valid:
        raise UnsupportedError("the product-of-quotients formula needs invariant coordinates for Veronese weights > 1")

    intermediates = {}
    if method in ("segre", "both"):
        intermediates["segre"] = edd_segre_veronese(spec)
    if method in ("fo", "both"):
        intermediates["fo"] = edd_fo(spec.dims, spec.weights)
    if method == "both" and intermediates["segre"] != intermediates["fo"]:
        raise DomainError(f"product formulas disagree: segre {intermediates['segre']}, fo {intermediates['fo']}")
    if spec.factor_count == 1 and spec.coords == Coordinates.INVARIANT:
        closed = fo_closed_form(spec.dims[0], spec.weights[0])
        intermediates["closed_form"] = closed
        if method == "both" and closed != intermediates["segre"]:
            raise DomainError(f"closed form {closed} disagrees with {intermediates['segre']}")

    value = intermediates.get("segre", intermediates.get("fo"))
    logger.info(f"[Products] {spec.dims} ({spec.coords.value}, method {method}) -> {value}")
    return EddReport(
        value=value,
        method=EddMethod.PRODUCT,
        inputs={**spec.to_dict(), "method": method},
        intermediates=intermediates
    )


def snc_report(dims: Sequence[int], weights: Sequence[int], divisors: Sequence[Sequence[int]]) -> EddReport:
    value = snc_edd(dims, weights, divisors)
    warnings = []
    if value < 0:
        warnings.append(f"negative ED degree {value}: the divisor data do not come from an actual variety")
        logger.warning(f"[Products] negative snc value {value}")
    return EddReport(
        value=value,
        method=EddMethod.PRODUCT,
        inputs={"dims": list(dims), "weights": list(weights), "divisors": [list(D) for D in divisors]},
        intermediates={"factors": len(dims), "divisor_count": len(divisors)},
        warnings=warnings
    )
