"""Tests for the class calculus and the formula paths built on it"""

import random
from fractions import Fraction
from math import comb

import pytest

from classcalc import (
    ProjClass,
    cap_with_poly,
    chern_fulton_quadric_section,
    class_dual,
    class_tensor,
    csm_from_milnor,
    curve_edd,
    edd_from_csm,
    edd_from_euler,
    edd_from_milnor,
    edd_isolated,
    edd_smooth_via_segre,
    gamma_from_segre,
    gedd_from_chern,
    generic_edd,
    hypersurface_chern,
    hypersurface_edd,
    milnor_alternating_sum,
    milnor_from_segre,
    quadric_euler_characteristic,
    sphere_pipeline,
    surface_p3_edd,
    twisted_cotangent_chern,
    veronese_quartic_rank,
    veronese_surface_edd,
)
from errors import DomainError, PreconditionError
from models import EddMethod, EulerData
from polyring import TruncatedMultiSeries, ts_coefficient, ts_divide

SPHERE_P3_CHERN = ProjClass.from_sequence([4, 4, 2], 3)
SPHERE_P3_SEGRE = ProjClass.from_sequence([-2, 2], 3)


def _random_class(rng: random.Random, ambient: int, top: int) -> ProjClass:
    """Random integer class supported in dimensions 0..top"""
    return ProjClass.from_dims(ambient, {j: rng.randint(-9, 9) for j in range(top + 1)})


# ==================== ProjClass ====================

def test_projclass_construction():
    alpha = ProjClass.from_sequence([1, 2], 3)
    assert alpha.degrees == (1, 2, 0, 0)
    assert alpha.top_dimension() == 1
    assert ProjClass.zero(2).top_dimension() == -1
    assert ProjClass.fundamental(3, 2, 5)[2] == 5
    assert (alpha + alpha - alpha.scale(2)).is_zero()
    assert alpha.render() == "1,2,0,0"

    with pytest.raises(DomainError):
        ProjClass.from_sequence([1, 2, 3], 1)
    with pytest.raises(DomainError):
        ProjClass.from_dims(2, {3: 1})
    with pytest.raises(DomainError):
        alpha + ProjClass.zero(2)


def test_cap_with_poly_lowers_dimension():
    alpha = ProjClass.from_sequence([0, 0, 3], 2)
    assert cap_with_poly(alpha, [1, 1]).degrees == (0, 3, 3)
    assert cap_with_poly(alpha, [0, 0, 1]).degrees == (3, 0, 0)
    with pytest.raises(DomainError):
        cap_with_poly(alpha, [1, 0, 0, 1])


def test_dual_is_an_involution():
    rng = random.Random(7)
    for _ in range(20):
        m = rng.randint(0, 5)
        alpha = _random_class(rng, 6, m)
        assert class_dual(class_dual(alpha, m), m) == alpha


def test_tensor_is_additive():
    rng = random.Random(11)
    for _ in range(20):
        m = rng.randint(0, 5)
        alpha = _random_class(rng, 6, m)
        l1, l2 = rng.randint(-3, 3), rng.randint(-3, 3)
        assert class_tensor(class_tensor(alpha, l1, m), l2, m) == class_tensor(alpha, l1 + l2, m)
        assert class_tensor(alpha, 0, m) == alpha


def test_twisted_integral_does_not_depend_on_the_line_bundle():
    rng = random.Random(13)
    for _ in range(20):
        m = rng.randint(1, 5)
        alpha = _random_class(rng, 6, m)
        values = set()
        for ell in range(-2, 5):
            twisted = class_tensor(alpha, ell, m)
            cofactor = [comb(m - 1, k) * ell ** k for k in range(m)]
            values.add(cap_with_poly(twisted, cofactor).integral())
        assert len(values) == 1


def test_dual_and_tensor_preconditions():
    alpha = ProjClass.from_sequence([1, 2, 3], 4)
    with pytest.raises(DomainError):
        class_tensor(alpha, 1, 5)
    with pytest.raises(DomainError):
        class_tensor(alpha, 1, -1)
    with pytest.raises(DomainError):
        class_tensor(alpha, 1, 1)
    with pytest.raises(DomainError):
        class_dual(alpha, 5)
    assert class_tensor(alpha, 1, 2).degrees[2] == 3


# ==================== Chern data ====================

def test_hypersurface_chern():
    assert hypersurface_chern(4, 2) == SPHERE_P3_CHERN
    for d in range(1, 7):
        assert hypersurface_chern(3, d).degrees == (3 * d - d * d, d, 0)
    assert hypersurface_chern(2, 1).degrees == (1, 0)
    with pytest.raises(DomainError):
        hypersurface_chern(1, 2)


def test_twisted_cotangent_chern():
    # (1+h)^4/(1+2h) ∩ [X] for the quadric surface
    assert twisted_cotangent_chern(SPHERE_P3_CHERN, 2, 2).degrees == (4, 4, 2, 0)
    # plain cotangent class
    assert twisted_cotangent_chern(SPHERE_P3_CHERN, 2, 0).degrees == (4, -4, 2, 0)
    # rank one: 1 + (ell*h - c1)
    curve = hypersurface_chern(3, 4)
    assert twisted_cotangent_chern(curve, 1, 3).degrees == (4 * (3 - (3 - 4)), 4, 0)


def test_gedd_from_chern():
    assert gedd_from_chern(SPHERE_P3_CHERN, 2) == 6
    assert gedd_from_chern(hypersurface_chern(3, 5), 1) == 25
    assert gedd_from_chern(ProjClass.from_sequence([3, 6, 4], 5), 2) == 13
    for n in range(3, 13):
        assert gedd_from_chern(hypersurface_chern(n, 2), n - 2) == 2 * n - 2
    for d in range(1, 9):
        assert gedd_from_chern(hypersurface_chern(4, d), 2) == d * (d * d - d + 1)

    with pytest.raises(DomainError):
        gedd_from_chern(ProjClass.from_sequence([1, 1, 1], 2), 1)


def test_linear_spaces_have_ed_degree_one():
    for N in range(0, 13):
        chern = ProjClass.from_sequence([comb(N + 1, N - j) for j in range(N + 1)], N)
        assert gedd_from_chern(chern, N) == 1


def test_generic_weights_are_series_coefficients():
    # coefficient of t^N in t^(N-j) / ((1+t)(1+2t)) is (-1)^j (2^(j+1) - 1)
    for N in range(0, 13):
        denominator = TruncatedMultiSeries.from_terms((N,), {(0,): 1, (1,): 3, (2,): 2})
        for j in range(N + 1):
            numerator = TruncatedMultiSeries.from_terms((N,), {(N - j,): 1})
            weight = (-1) ** j * (2 ** (j + 1) - 1)
            assert ts_coefficient(ts_divide(numerator, denominator), (N,)) == weight
            unit = ProjClass.from_dims(N, {j: 1})
            assert gedd_from_chern(unit, N) == (-1) ** N * weight


def test_generic_edd_report():
    report = generic_edd(SPHERE_P3_CHERN, 2, mather=True)
    assert report.value == 6
    assert report.method == EddMethod.GENERIC
    assert report.inputs["mather"] is True


# ==================== Segre path ====================

def test_gamma_from_segre():
    assert gamma_from_segre(SPHERE_P3_CHERN, 2, ProjClass.zero(3)) == 0
    assert gamma_from_segre(SPHERE_P3_CHERN, 2, SPHERE_P3_SEGRE) == 4


def test_gamma_of_fundamental_class_is_generic_degree():
    for n in range(3, 9):
        for d in range(1, 7):
            chern = hypersurface_chern(n, d)
            fundamental = ProjClass.fundamental(n - 1, n - 2, d)
            assert gamma_from_segre(chern, n - 2, fundamental) == gedd_from_chern(chern, n - 2)


def test_edd_smooth_via_segre():
    report = edd_smooth_via_segre(SPHERE_P3_CHERN, 2, SPHERE_P3_SEGRE)
    assert report.value == 2
    assert report.intermediates == {"gEdd": 6, "gamma": 4}

    curve = hypersurface_chern(3, 5)
    assert edd_smooth_via_segre(curve, 1, ProjClass.zero(2)).value == 25
    assert edd_smooth_via_segre(curve, 1, ProjClass.fundamental(2, 1, 5)).value == 0


# ==================== Milnor path ====================

def test_milnor_from_segre():
    assert milnor_from_segre(SPHERE_P3_CHERN, 2, SPHERE_P3_SEGRE).degrees == (2, -2, 0, 0)
    assert milnor_from_segre(SPHERE_P3_CHERN, 2, ProjClass.zero(3)).is_zero()
    # isolated singular points keep their Milnor numbers
    points = ProjClass.from_dims(3, {0: 5})
    assert milnor_from_segre(SPHERE_P3_CHERN, 2, points).degrees == (5, 0, 0, 0)


def test_edd_from_milnor():
    sphere = edd_from_milnor(SPHERE_P3_CHERN, 2, ProjClass.from_sequence([2, -2], 3))
    assert sphere.value == 2
    assert sphere.intermediates["milnor_sum"] == 4
    assert edd_from_milnor(SPHERE_P3_CHERN, 2, ProjClass.zero(3)).value == 6

    with pytest.raises(PreconditionError):
        edd_from_milnor(SPHERE_P3_CHERN, 2, ProjClass.from_dims(3, {2: 1}))


def test_isolated_singularities():
    chern = hypersurface_chern(4, 3)
    assert edd_isolated(chern, 2, [1, 1, 2]).value == 21 - 4
    assert hypersurface_edd(4, 3, [1, 1, 2]).value == 17
    assert hypersurface_edd(4, 3).value == 21
    with pytest.raises(DomainError):
        edd_isolated(chern, 2, [1, -1])


def test_segre_and_milnor_paths_agree():
    rng = random.Random(2024)
    for n in range(3, 9):
        for d in range(1, 7):
            chern = hypersurface_chern(n, d)
            dim_x = n - 2
            for _ in range(50):
                segre = _random_class(rng, n - 1, dim_x - 1)
                gamma = gamma_from_segre(chern, dim_x, segre)
                milnor = milnor_from_segre(chern, dim_x, segre)
                assert milnor.top_dimension() < dim_x
                assert milnor_alternating_sum(milnor) == gamma


# ==================== CSM path ====================

def test_chern_fulton_alternating_identity():
    for n in range(2, 9):
        for d in range(1, 7):
            chern = hypersurface_chern(n, d)
            dim_x = n - 2
            fulton = chern_fulton_quadric_section(chern, dim_x)
            expected = sum((-1) ** (j + 1) * (2 ** (j + 1) - 2) * chern[j] for j in range(dim_x + 1))
            assert fulton.alternating_sum() == expected


def test_csm_and_milnor_paths_agree():
    rng = random.Random(99)
    for n in range(3, 9):
        chern = hypersurface_chern(n, 2)
        dim_x = n - 2
        for _ in range(10):
            milnor = _random_class(rng, n - 1, dim_x - 1)
            csm = csm_from_milnor(chern, dim_x, milnor)
            assert edd_from_csm(chern, dim_x, csm).value == edd_from_milnor(chern, dim_x, milnor).value


def test_segre_milnor_and_csm_reports_agree():
    rng = random.Random(2025)
    for n in range(3, 9):
        for d in range(1, 7):
            chern = hypersurface_chern(n, d)
            dim_x = n - 2
            for _ in range(50):
                segre = _random_class(rng, n - 1, dim_x - 1)
                milnor = milnor_from_segre(chern, dim_x, segre)
                csm = csm_from_milnor(chern, dim_x, milnor)
                via_segre = edd_smooth_via_segre(chern, dim_x, segre)
                via_milnor = edd_from_milnor(chern, dim_x, milnor)
                via_csm = edd_from_csm(chern, dim_x, csm)
                assert via_segre.value == via_milnor.value == via_csm.value


def test_edd_from_csm():
    assert edd_from_csm(SPHERE_P3_CHERN, 2, SPHERE_P3_CHERN).value == 0
    assert edd_from_csm(SPHERE_P3_CHERN, 2, ProjClass.from_sequence([2, 2], 3)).value == 2
    veronese = ProjClass.from_sequence([3, 6, 4], 5)
    assert edd_from_csm(veronese, 2, ProjClass.from_sequence([-4, 8], 5)).value == 13

    with pytest.raises(DomainError):
        edd_from_csm(ProjClass.from_sequence([Fraction(1, 2), 1], 1), 1, ProjClass.zero(1))


# ==================== Euler path ====================

def test_edd_from_euler():
    assert edd_from_euler(EulerData(2, 4, 2, 2, 2)).value == 2
    assert edd_from_euler(EulerData(3, 4, 4, 4, 2)).value == 2
    for d in range(1, 9):
        chi_c = -2 * d * (d - 2)
        data = EulerData(2, d * (d * d - 4 * d + 6), chi_c, 3 * d - d * d, 2 * d)
        assert edd_from_euler(data).value == surface_p3_edd(d, chi_c).value


def test_negative_values_are_reported():
    report = edd_from_euler(EulerData(0, 0, 1, 0, 0))
    assert report.value == -1
    assert report.warnings


def test_curve_edd():
    assert curve_edd(3, 2, 2).value == 3
    for n in range(3, 12):
        assert curve_edd(n - 1, 2, 2).value == n - 1
    for d in range(1, 8):
        assert curve_edd(d, 2 * d, 3 * d - d * d).value == d * d
    with pytest.raises(DomainError):
        curve_edd(0, 1, 2)


def test_surface_p3_edd():
    for d in range(1, 9):
        report = surface_p3_edd(d, -2 * d * (d - 2))
        assert report.value == d * (d * d - d + 1)
        assert report.value == gedd_from_chern(hypersurface_chern(4, d), 2)
    assert surface_p3_edd(1, 3).value == 0
    assert surface_p3_edd(3, -6).value == 21
    assert surface_p3_edd(2, 0).warnings


# ==================== Worked families ====================

def test_quadric_euler_characteristic():
    assert [quadric_euler_characteristic(N) for N in range(-1, 6)] == [0, 0, 2, 2, 4, 4, 6]


@pytest.mark.parametrize("n", range(2, 11))
def test_sphere_pipeline(n):
    report = sphere_pipeline(n)
    assert report.value == 2
    assert report.intermediates["gEdd"] == 2 * n - 2
    assert report.intermediates["gamma"] == 2 * (n - 2)
    for path in ("segre", "milnor", "csm", "euler"):
        assert report.intermediates[f"edd_{path}"] == 2


def test_veronese_surface_scenarios():
    assert veronese_surface_edd(4, -4).value == 13    # smooth plane quartic
    assert veronese_surface_edd(2, 2).value == 3      # double conic
    assert veronese_surface_edd(4, 0).value == 9      # two conics meeting transversally
    assert veronese_surface_edd(4, 2).value == 7      # two bitangent conics


def test_veronese_quartic_rank():
    assert veronese_quartic_rank([1, 1, 1, 1, 1, 1]) == 3
    assert veronese_quartic_rank([1, 2, 2, 1, 2, 1]) == 1
    assert veronese_quartic_rank([1, 0, 0, 1, 0, 0]) == 2
    assert veronese_quartic_rank([0] * 6) == 0
    with pytest.raises(DomainError):
        veronese_quartic_rank([1, 1, 1])
