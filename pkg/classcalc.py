"""
Class calculus on P^N and the five ED degree formula paths

Classes are stored by their degrees by dimension: entry j of a ProjClass is
the degree of its j-dimensional component. Capping with h^k lowers dimension
by k and preserves degree, so every operation below acts on degree vectors.

Formula paths:
- generic: gEdd from Chern (or Chern-Mather) degrees
- segre: gEdd - gamma, gamma from the Segre class of the singularity subscheme of Q∩X
- milnor: gEdd - alternating sum of the Milnor class of Q∩X
- csm: alternating sum of c(X) - c_SM(Q∩X)
- euler: alternating sum of Euler characteristics of X, X∩Q, X∩H, X∩Q∩H
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from errors import DomainError, PreconditionError
from exactnum import as_integer, render_rational
from models import EddMethod, EddReport, EulerData

logger = logging.getLogger(__name__)


# ==================== Classes ====================

@dataclass(frozen=True)
class ProjClass:
    """Rational-equivalence class pushed to P^N, as degrees by dimension"""
    ambient_dim: int
    degrees: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise DomainError("ambient dimension must be non-negative")
        degrees = tuple(Fraction(d) for d in self.degrees)
        if len(degrees) != self.ambient_dim + 1:
            raise DomainError(f"a class in P^{self.ambient_dim} needs {self.ambient_dim + 1} degrees, got {len(degrees)}")
        object.__setattr__(self, "degrees", degrees)

    @classmethod
    def zero(cls, ambient_dim: int) -> "ProjClass":
        return cls(ambient_dim, (Fraction(0),) * (ambient_dim + 1))

    @classmethod
    def from_sequence(cls, values: Sequence, ambient_dim: Optional[int] = None) -> "ProjClass":
        """Degrees ordered from dimension 0 upward, zero-padded up to ambient_dim"""
        values = [Fraction(v) for v in values]
        if ambient_dim is None:
            ambient_dim = max(len(values) - 1, 0)
        if len(values) > ambient_dim + 1:
            if any(values[ambient_dim + 1:]):
                raise DomainError(f"class has components above dimension {ambient_dim}")
            values = values[:ambient_dim + 1]
        return cls(ambient_dim, tuple(values + [Fraction(0)] * (ambient_dim + 1 - len(values))))

    @classmethod
    def from_dims(cls, ambient_dim: int, pieces: Mapping[int, object]) -> "ProjClass":
        values = [Fraction(0)] * (ambient_dim + 1)
        for j, v in pieces.items():
            if not 0 <= j <= ambient_dim:
                raise DomainError(f"dimension {j} is outside P^{ambient_dim}")
            values[j] = Fraction(v)
        return cls(ambient_dim, tuple(values))

    @classmethod
    def fundamental(cls, ambient_dim: int, dim_x: int, degree) -> "ProjClass":
        """[X] for X of the given dimension and degree"""
        return cls.from_dims(ambient_dim, {dim_x: degree})

    def __getitem__(self, j: int) -> Fraction:
        if 0 <= j <= self.ambient_dim:
            return self.degrees[j]
        return Fraction(0)

    def __add__(self, other: "ProjClass") -> "ProjClass":
        _check_ambient(self, other)
        return ProjClass(self.ambient_dim, tuple(a + b for a, b in zip(self.degrees, other.degrees)))

    def __sub__(self, other: "ProjClass") -> "ProjClass":
        _check_ambient(self, other)
        return ProjClass(self.ambient_dim, tuple(a - b for a, b in zip(self.degrees, other.degrees)))

    def __neg__(self) -> "ProjClass":
        return ProjClass(self.ambient_dim, tuple(-a for a in self.degrees))

    def scale(self, value) -> "ProjClass":
        value = Fraction(value)
        return ProjClass(self.ambient_dim, tuple(a * value for a in self.degrees))

    def integral(self) -> Fraction:
        """Degree of the dimension-0 component"""
        return self.degrees[0]

    def alternating_sum(self) -> Fraction:
        return sum((a if j % 2 == 0 else -a for j, a in enumerate(self.degrees)), Fraction(0))

    def top_dimension(self) -> int:
        """Largest dimension with a nonzero component, -1 for the zero class"""
        for j in range(self.ambient_dim, -1, -1):
            if self.degrees[j]:
                return j
        return -1

    def is_zero(self) -> bool:
        return not any(self.degrees)

    def render(self) -> str:
        return ",".join(render_rational(d) for d in self.degrees)

    def __str__(self) -> str:
        return self.render()


def _check_ambient(a: ProjClass, b: ProjClass):
    if a.ambient_dim != b.ambient_dim:
        raise DomainError(f"classes live in different spaces: P^{a.ambient_dim} vs P^{b.ambient_dim}")


# ==================== Polynomials in h ====================

def _h_mul(a: Sequence[Fraction], b: Sequence[Fraction], cap: int) -> List[Fraction]:
    out = [Fraction(0)] * (cap + 1)
    for i, x in enumerate(a[:cap + 1]):
        if not x:
            continue
        for j, y in enumerate(b[:cap + 1 - i]):
            out[i + j] += x * y
    return out


def _h_divide_linear(a: Sequence[Fraction], ell, cap: int) -> List[Fraction]:
    """a / (1 + ell*h) truncated at h^cap"""
    out = []
    previous = Fraction(0)
    for k in range(cap + 1):
        previous = (Fraction(a[k]) if k < len(a) else Fraction(0)) - ell * previous
        out.append(previous)
    return out


def _check_dim(chern: ProjClass, dim_x: int):
    if not 0 <= dim_x <= chern.ambient_dim:
        raise DomainError(f"dim X = {dim_x} does not fit in P^{chern.ambient_dim}")
    if any(chern.degrees[dim_x + 1:]):
        raise DomainError(f"Chern class has components above dim X = {dim_x}")


def cap_with_poly(alpha: ProjClass, p: Sequence) -> ProjClass:
    """p(h) ∩ alpha: result_j = sum_k p_k * alpha_(j+k)"""
    coeffs = [Fraction(c) for c in p]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) - 1 > alpha.ambient_dim:
        raise DomainError(f"polynomial of degree {len(coeffs) - 1} exceeds the ambient dimension {alpha.ambient_dim}")
    N = alpha.ambient_dim
    return ProjClass(N, tuple(
        sum((c * alpha[j + k] for k, c in enumerate(coeffs)), Fraction(0)) for j in range(N + 1)
    ))


def class_dual(alpha: ProjClass, m: int) -> ProjClass:
    """Sign the codimension-i piece by (-1)^i, codimension taken in an m-dimensional variety"""
    if not 0 <= m <= alpha.ambient_dim:
        raise DomainError(f"variety dimension {m} does not fit in P^{alpha.ambient_dim}")
    return ProjClass(alpha.ambient_dim, tuple(a if (m - j) % 2 == 0 else -a for j, a in enumerate(alpha.degrees)))


def class_tensor(alpha: ProjClass, ell: int, m: int) -> ProjClass:
    """alpha ⊗ O(ell*h): the codimension-i piece is divided by (1 + ell*h)^i"""
    if not 0 <= m <= alpha.ambient_dim:
        raise DomainError(f"variety dimension {m} does not fit in P^{alpha.ambient_dim}")
    if any(alpha.degrees[m + 1:]):
        raise DomainError(f"class has components above dimension {m}")
    out = [Fraction(0)] * (alpha.ambient_dim + 1)
    for j in range(m + 1):
        a = alpha.degrees[j]
        if not a:
            continue
        i = m - j
        out[j] += a
        if i == 0:
            continue
        for t in range(1, j + 1):
            coefficient = comb(i + t - 1, t) * ell ** t
            out[j - t] += -coefficient * a if t % 2 else coefficient * a
    return ProjClass(alpha.ambient_dim, tuple(out))


def chern_polynomial(chern_tx: ProjClass, dim_x: int) -> List[Fraction]:
    """
    c(TX) as a polynomial in h: c_k = c(X)_(dim X - k) / deg X.

    Only meaningful when the Chern classes of X are pulled back from P^N
    (complete intersections), which is when a degree vector determines c(TX).
    """
    _check_dim(chern_tx, dim_x)
    degree = chern_tx[dim_x]
    if not degree:
        raise DomainError("Chern class has no top-dimensional component (deg X = 0)")
    return [chern_tx[dim_x - k] / degree for k in range(dim_x + 1)]


def _twisted_cotangent_poly(gammas: Sequence[Fraction], rank: int, ell: int) -> List[Fraction]:
    out = []
    for i in range(rank + 1):
        total = Fraction(0)
        for k in range(i + 1):
            ck = gammas[k] if k % 2 == 0 else -gammas[k]
            total += comb(rank - k, i - k) * ck * ell ** (i - k)
        out.append(total)
    return out


def twisted_cotangent_chern(chern_tx: ProjClass, dim_x: int, ell: int) -> ProjClass:
    """c(T*X ⊗ O(ell*h)) ∩ [X] from c(TX) ∩ [X]"""
    gammas = chern_polynomial(chern_tx, dim_x)
    twisted = _twisted_cotangent_poly(gammas, dim_x, ell)
    degree = chern_tx[dim_x]
    pieces = {dim_x - i: c * degree for i, c in enumerate(twisted)}
    return ProjClass.from_dims(chern_tx.ambient_dim, pieces)


# ==================== Formula paths ====================

def _final_value(total: Fraction, warnings: List[str], what: str = "ED degree") -> int:
    value = as_integer(total, what)
    if value < 0:
        warnings.append(f"negative {what} {value}: the inputs do not come from an actual variety")
        logger.warning(f"[ClassCalc] negative {what} {value}")
    return value


def gedd_from_chern(chern: ProjClass, dim_x: int) -> int:
    """gEdd = sum_j (-1)^(dim X + j) (2^(j+1) - 1) c_j"""
    _check_dim(chern, dim_x)
    total = Fraction(0)
    for j in range(dim_x + 1):
        term = chern[j] * (2 ** (j + 1) - 1)
        total += term if (dim_x + j) % 2 == 0 else -term
    return as_integer(total, "generic ED degree")


def generic_edd(chern: ProjClass, dim_x: int, mather: bool = False) -> EddReport:
    """gEdd as a report; with Chern-Mather degrees this is the Euler-Mather reading"""
    value = gedd_from_chern(chern, dim_x)
    warnings: List[str] = []
    _final_value(Fraction(value), warnings, "generic ED degree")
    return EddReport(
        value=value,
        method=EddMethod.GENERIC,
        inputs={"chern": chern, "dim_x": dim_x, "mather": mather},
        intermediates={"gEdd": value},
        warnings=warnings
    )


def hypersurface_chern(n: int, d: int) -> ProjClass:
    """c(TX) ∩ [X] for a smooth degree-d hypersurface of P^(n-1)"""
    if n < 2 or d < 1:
        raise DomainError(f"hypersurface needs n >= 2 and d >= 1, got n={n}, d={d}")
    dim_x = n - 2
    series = _h_divide_linear([comb(n, k) for k in range(n + 1)], d, dim_x)
    return ProjClass.from_dims(n - 1, {dim_x - k: d * c for k, c in enumerate(series)})


def gamma_from_segre(chern_tx: ProjClass, dim_x: int, segre_j: ProjClass) -> Fraction:
    """∫ (1+2h) c(T*X ⊗ O(2h)) / (1+h) ∩ s(J(Q∩X), X)"""
    _check_ambient(chern_tx, segre_j)
    twisted = _twisted_cotangent_poly(chern_polynomial(chern_tx, dim_x), dim_x, 2)
    cofactor = _h_divide_linear(_h_mul([Fraction(1), Fraction(2)], twisted, dim_x), 1, dim_x)
    return cap_with_poly(segre_j, cofactor).integral()


def edd_smooth_via_segre(chern_tx: ProjClass, dim_x: int, segre_j: ProjClass) -> EddReport:
    """Edd = gEdd - gamma, X smooth near Q∩X"""
    g = gedd_from_chern(chern_tx, dim_x)
    gamma = gamma_from_segre(chern_tx, dim_x, segre_j)
    warnings: List[str] = []
    value = _final_value(g - gamma, warnings)
    return EddReport(
        value=value,
        method=EddMethod.SEGRE,
        inputs={"chern": chern_tx, "dim_x": dim_x, "segre": segre_j},
        intermediates={"gEdd": g, "gamma": gamma},
        warnings=warnings
    )


def milnor_from_segre(chern_tx: ProjClass, dim_x: int, segre_j: ProjClass, ell: int = 2) -> ProjClass:
    """M(Q∩X) = (-1)^(dim X) c(TX)/(1+ell*h) ∩ (s^∨ ⊗ O(ell*h))"""
    _check_ambient(chern_tx, segre_j)
    cofactor = _h_divide_linear(chern_polynomial(chern_tx, dim_x), ell, dim_x)
    transformed = class_tensor(class_dual(segre_j, dim_x), ell, dim_x)
    milnor = cap_with_poly(transformed, cofactor)
    return milnor if dim_x % 2 == 0 else -milnor


def milnor_alternating_sum(milnor: ProjClass) -> Fraction:
    """sum_j (-1)^j M_j"""
    return milnor.alternating_sum()


def edd_from_milnor(chern_tx: ProjClass, dim_x: int, milnor: ProjClass) -> EddReport:
    """Edd = gEdd - sum_j (-1)^j M_j"""
    _check_ambient(chern_tx, milnor)
    if any(milnor.degrees[dim_x:]):
        raise PreconditionError(f"Milnor class of Q∩X must live below dim X = {dim_x}")
    g = gedd_from_chern(chern_tx, dim_x)
    correction = milnor_alternating_sum(milnor)
    warnings: List[str] = []
    value = _final_value(g - correction, warnings)
    return EddReport(
        value=value,
        method=EddMethod.MILNOR,
        inputs={"chern": chern_tx, "dim_x": dim_x, "milnor": milnor},
        intermediates={"gEdd": g, "milnor_sum": correction},
        warnings=warnings
    )


def edd_isolated(chern_tx: ProjClass, dim_x: int, milnor_numbers: Sequence[int]) -> EddReport:
    """Edd = gEdd - sum of the Milnor numbers of the isolated singularities of Q∩X"""
    numbers = [int(mu) for mu in milnor_numbers]
    if any(mu < 0 for mu in numbers):
        raise DomainError(f"Milnor numbers must be non-negative: {numbers}")
    g = gedd_from_chern(chern_tx, dim_x)
    warnings: List[str] = []
    value = _final_value(Fraction(g - sum(numbers)), warnings)
    return EddReport(
        value=value,
        method=EddMethod.MILNOR,
        inputs={"chern": chern_tx, "dim_x": dim_x, "milnor_numbers": numbers},
        intermediates={"gEdd": g, "milnor_sum": sum(numbers)},
        warnings=warnings
    )


def chern_fulton_quadric_section(chern_tx: ProjClass, dim_x: int) -> ProjClass:
    """c_F(Q∩X) = 2h/(1+2h) ∩ c(TX) ∩ [X]"""
    _check_dim(chern_tx, dim_x)
    factor = [Fraction(0)] + [Fraction(-(-2) ** k) for k in range(1, dim_x + 1)]
    return cap_with_poly(chern_tx, factor)


def csm_from_milnor(chern_tx: ProjClass, dim_x: int, milnor: ProjClass) -> ProjClass:
    """c_SM(Q∩X) = c_F(Q∩X) + (-1)^(dim X) M(Q∩X)"""
    fulton = chern_fulton_quadric_section(chern_tx, dim_x)
    return fulton + milnor if dim_x % 2 == 0 else fulton - milnor


def edd_from_csm(chern_x: ProjClass, dim_x: int, csm_qx: ProjClass) -> EddReport:
    """Edd = (-1)^(dim X) sum_j (-1)^j (c(X)_j - c_SM(Q∩X)_j)"""
    _check_dim(chern_x, dim_x)
    _check_ambient(chern_x, csm_qx)
    difference = (chern_x - csm_qx).alternating_sum()
    total = difference if dim_x % 2 == 0 else -difference
    warnings: List[str] = []
    value = _final_value(total, warnings)
    return EddReport(
        value=value,
        method=EddMethod.CSM,
        inputs={"chern": chern_x, "dim_x": dim_x, "csm": csm_qx},
        intermediates={"chi_x": chern_x.integral(), "chi_qx": csm_qx.integral()},
        warnings=warnings
    )


def edd_from_euler(e: EulerData) -> EddReport:
    """Edd = (-1)^(dim X) (chi(X) - chi(X∩Q) - chi(X∩H) + chi(X∩Q∩H))"""
    total = e.chi_x - e.chi_xq - e.chi_xh + e.chi_xqh
    if e.dim_x % 2:
        total = -total
    warnings: List[str] = []
    value = _final_value(Fraction(total), warnings)
    return EddReport(
        value=value,
        method=EddMethod.EULER,
        inputs=e.to_dict(),
        intermediates={"chi_x_minus_q": e.chi_x - e.chi_xq, "chi_xh_minus_q": e.chi_xh - e.chi_xqh},
        warnings=warnings
    )


def curve_edd(d: int, num_qc: int, chi_c: int) -> EddReport:
    """Edd(C) = d + #(Q∩C) - chi(C)"""
    if d < 1 or num_qc < 0:
        raise DomainError(f"curve needs d >= 1 and #(Q∩C) >= 0, got d={d}, #(Q∩C)={num_qc}")
    warnings: List[str] = []
    value = _final_value(Fraction(d + num_qc - chi_c), warnings)
    return EddReport(
        value=value,
        method=EddMethod.EULER,
        inputs={"d": d, "num_qc": num_qc, "chi_c": chi_c},
        warnings=warnings
    )


def surface_p3_edd(d: int, chi_c: int) -> EddReport:
    """Edd(S) = d(d^2 - 3d + 5) - chi(C) for a smooth surface S of P^3, C = S∩Q"""
    if d < 1:
        raise DomainError(f"surface degree must be positive, got {d}")
    warnings: List[str] = []
    if d == 2:
        warnings.append("quadric surfaces may be tangent to Q along a curve; the formula needs C reduced")
    value = _final_value(Fraction(d * (d * d - 3 * d + 5) - chi_c), warnings)
    return EddReport(
        value=value,
        method=EddMethod.EULER,
        inputs={"d": d, "chi_c": chi_c},
        intermediates={"gEdd_smooth_c": d * (d * d - d + 1)},
        warnings=warnings
    )


# ==================== Worked families ====================

def quadric_euler_characteristic(N: int) -> int:
    """chi of a smooth quadric in P^N"""
    if N < 0:
        return 0
    return N + 1 if N % 2 else N


def sphere_pipeline(n: int) -> EddReport:
    """
    The sphere x_1^2 + ... + x_(n-1)^2 = x_n^2 in P^(n-1) through every path.

    Q∩X is the smooth quadric X∩H counted twice, so the Segre class of its
    singularity subscheme is h ∩ [X] / (1+h). All four Edd values must agree.
    """
    if n < 2:
        raise DomainError(f"sphere needs n >= 2, got {n}")
    N, dim_x = n - 1, n - 2
    chern = hypersurface_chern(n, 2)
    fundamental = ProjClass.fundamental(N, dim_x, 2)
    h_over = [Fraction(0)] + [Fraction((-1) ** (k - 1)) for k in range(1, dim_x + 1)]
    segre = cap_with_poly(fundamental, h_over)

    via_segre = edd_smooth_via_segre(chern, dim_x, segre)
    milnor = milnor_from_segre(chern, dim_x, segre)
    via_milnor = edd_from_milnor(chern, dim_x, milnor)
    csm = csm_from_milnor(chern, dim_x, milnor)
    via_csm = edd_from_csm(chern, dim_x, csm)
    euler = EulerData(
        dim_x=dim_x,
        chi_x=quadric_euler_characteristic(N),
        chi_xq=quadric_euler_characteristic(N - 1),
        chi_xh=quadric_euler_characteristic(N - 1),
        chi_xqh=quadric_euler_characteristic(N - 2),
    )
    via_euler = edd_from_euler(euler)

    values = {
        "segre": via_segre.value,
        "milnor": via_milnor.value,
        "csm": via_csm.value,
        "euler": via_euler.value,
    }
    if len(set(values.values())) != 1:
        raise DomainError(f"sphere paths disagree: {values}")
    logger.info(f"[ClassCalc] sphere n={n}: all paths give {via_segre.value}")
    return EddReport(
        value=via_segre.value,
        method=EddMethod.SEGRE,
        inputs={"n": n},
        intermediates={
            "gEdd": via_segre.intermediates["gEdd"],
            "gamma": via_segre.intermediates["gamma"],
            "chern": chern,
            "segre": segre,
            "milnor": milnor,
            "csm": csm,
            **{f"edd_{k}": v for k, v in values.items()},
        }
    )


VERONESE_CHERN = (3, 6, 4)


def veronese_surface_edd(deg_c: int, chi_c: int) -> EddReport:
    """
    Veronese surface in P^5 meeting Q in the image of a plane curve C.

    Edd = 2 deg C - chi(C) + 1, computed by the Euler path and checked
    against the CSM path.
    """
    if deg_c < 1:
        raise DomainError(f"deg C must be positive, got {deg_c}")
    via_euler = edd_from_euler(EulerData(2, 3, chi_c, 2, 2 * deg_c))
    chern = ProjClass.from_sequence(VERONESE_CHERN, 5)
    csm = ProjClass.from_dims(5, {0: chi_c, 1: 2 * deg_c})
    via_csm = edd_from_csm(chern, 2, csm)
    if via_euler.value != via_csm.value:
        raise DomainError(f"Veronese paths disagree: euler {via_euler.value}, csm {via_csm.value}")
    return EddReport(
        value=via_euler.value,
        method=EddMethod.EULER,
        inputs={"deg_c": deg_c, "chi_c": chi_c},
        intermediates={"gEdd": gedd_from_chern(chern, 2), "edd_csm": via_csm.value},
        warnings=via_euler.warnings
    )


QUARTIC_RANK_MEANING = {
    0: "zero quartic (the surface lies on Q)",
    1: "double conic (Edd 3)",
    2: "two conics (Edd 9, or 7 if bitangent)",
    3: "smooth or singular quartic",
}


def veronese_quartic_rank(squares: Sequence) -> int:
    """
    Rank of the symmetric matrix of the quadratic form q_1..q_6 pulled back to P^2.

    The Veronese coordinates (a_1 x^2, a_2 xy, a_3 xz, a_4 y^2, a_5 yz, a_6 z^2)
    give Q∩S = (sum q_k m_k^2) with q_k = a_k^2; this quartic is a square of a
    conic exactly when the matrix below has rank 1, and a product of two
    conics when it has rank 2.
    """
    if len(squares) != 6:
        raise DomainError(f"need six squared scalings, got {len(squares)}")
    q = [Fraction(v) for v in squares]
    matrix = [
        [2 * q[0], q[1], q[2]],
        [q[1], 2 * q[3], q[4]],
        [q[2], q[4], 2 * q[5]],
    ]
    return _rank(matrix)


def _rank(matrix: List[List[Fraction]]) -> int:
    rows = [list(r) for r in matrix]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][c]:
                factor = rows[r][c] / rows[rank][c]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def hypersurface_edd(n: int, d: int, milnor_numbers: Optional[Sequence[int]] = None) -> EddReport:
    """gEdd of a smooth degree-d hypersurface of P^(n-1), corrected by isolated Milnor numbers"""
    chern = hypersurface_chern(n, d)
    if milnor_numbers:
        report = edd_isolated(chern, n - 2, milnor_numbers)
    else:
        report = generic_edd(chern, n - 2)
    report.inputs.update({"n": n, "d": d})
    return report
