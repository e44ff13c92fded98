"""Winding-number zero counts and circle minima."""

import math

import numpy as np
import pytest

from lplab.errors import ParameterError, RealRootsError
from lplab.polyroots import section_polynomial
from lplab.series import FamilyKind, SeriesFamily
from lplab.zerocount import (
    count_zeros_in_disk,
    grid_min_modulus,
    min_modulus_on_circle,
    rho_radius,
    s2_root_modulus,
)


def eulerF(a, alternating=False):
    return SeriesFamily(FamilyKind.EULER_F, a, alternating=alternating)


def theta(a):
    return SeriesFamily(FamilyKind.THETA, a)


def q_euler(a, n):
    return (a**n + 1.0) / (a ** (n - 1) + 1.0)


# ---------------------------------------------------------------------------
# rho_radius
# ---------------------------------------------------------------------------

def test_rho_radius_closed_forms():
    assert rho_radius(eulerF(4.0), 2) == pytest.approx(
        3.4 * math.sqrt(65.0 / 17.0), rel=1e-13
    )
    assert rho_radius(eulerF(4.0), 3) == pytest.approx(
        3.4 * (65.0 / 17.0) * math.sqrt(257.0 / 65.0), rel=1e-13
    )
    assert rho_radius(theta(2.0), 2) == pytest.approx(8.0, rel=1e-13)
    # empty-product convention for j=1
    assert rho_radius(eulerF(4.0), 1) == pytest.approx(math.sqrt(3.4), rel=1e-13)


def test_rho_radius_sandwich_and_monotone():
    fam = eulerF(3.7)
    prev = 0.0
    for j in range(2, 12):
        prod = 1.0
        for i in range(2, j + 1):
            prod *= q_euler(3.7, i)
        rj = rho_radius(fam, j)
        assert prod < rj < prod * q_euler(3.7, j + 1)
        assert rj > prev
        prev = rj


# ---------------------------------------------------------------------------
# count_zeros_in_disk
# ---------------------------------------------------------------------------

def test_two_zero_disk_at_classical_radius():
    # the circle |z| = a^2+1 of the alternating series maps to |u| = q_2
    for a in (3.6, 4.0, 4.5):
        res = count_zeros_in_disk(eulerF(a), q_euler(a, 2))
        assert res.certified
        assert res.count == 2


def test_wider_disk_contains_third_zero():
    # |u| < a^2+1 in the normalized variable is a much larger disk than the
    # classical |z| < a^2+1 circle (|u| = q_2) and swallows the third zero
    res = count_zeros_in_disk(eulerF(4.0), 17.0)
    assert res.certified
    assert res.count == 3


def test_block_radius_counts():
    for j in (2, 4, 6):
        res = count_zeros_in_disk(eulerF(4.0), rho_radius(eulerF(4.0), j))
        assert res.certified
        assert res.count == j


def test_count_against_section_roots():
    # independent route: companion-matrix roots of a long section polynomial
    a, j = 4.0, 6
    r = rho_radius(eulerF(a), j)
    res = count_zeros_in_disk(eulerF(a), r)
    p = section_polynomial(eulerF(a), j + 8)
    roots = np.roots(list(p.coeffs)[::-1])
    assert int(np.sum(np.abs(roots) < r)) == res.count == j


def test_constant_function_has_no_zeros():
    one = SeriesFamily(FamilyKind.CUSTOM, custom_log_coeffs=(0.0,))
    res = count_zeros_in_disk(one, 5.0)
    assert res.count == 0
    assert res.certified


def test_winding_residual_certificate():
    res = count_zeros_in_disk(eulerF(4.0), 3.4)
    assert res.residual < 0.05
    assert res.min_modulus_seen > 0.0
    assert res.samples_used >= 256


def test_count_rejects_bad_radius():
    with pytest.raises(ParameterError):
        count_zeros_in_disk(eulerF(4.0), 0.0)


def test_count_retries_circle_through_zero():
    # locate the first zero of the normalized series precisely (the long
    # section approximates it far below the retry bump of 1e-6), then ask
    # for a count on a circle passing through it: the internal radius
    # perturbation must rescue the computation
    from lplab.polyroots import isolate_real_roots, refine, section_polynomial

    fam = eulerF(4.0)  # above the sign-flip parameter: zeros are real
    poly = section_polynomial(fam, 20)
    first = isolate_real_roots(poly, (1.0, 2.2))[0]
    zero_u = refine(poly, first, 1e-13)
    res = count_zeros_in_disk(fam, zero_u)
    assert res.certified
    assert res.radius != zero_u  # a perturbed radius was used
    assert res.count in (0, 1)
    # and a circle strictly between the first two zeros counts exactly one
    assert count_zeros_in_disk(fam, 2.2).count == 1


# ---------------------------------------------------------------------------
# min_modulus_on_circle
# ---------------------------------------------------------------------------

def test_min_modulus_section2_analytic():
    assert min_modulus_on_circle(eulerF(4.0, alternating=True), 2, 17.0) == 1.0
    a = 3.6
    assert min_modulus_on_circle(eulerF(a, alternating=True), 2, a * a + 1.0) == 1.0


def test_min_modulus_grid_agrees_with_analytic():
    rng = np.random.default_rng(7)
    for _ in range(20):
        # q_2 in [3, 4) corresponds to a in [3.5616, 4.6458)
        a = float(rng.uniform(3.57, 4.64))
        got = grid_min_modulus(eulerF(a, alternating=True), 2, a * a + 1.0, grid=512)
        assert got == pytest.approx(1.0, abs=1e-10)


def test_min_modulus_constant_family():
    one = SeriesFamily(FamilyKind.CUSTOM, custom_log_coeffs=(0.0,))
    assert min_modulus_on_circle(one, None, 3.0) == pytest.approx(1.0, abs=1e-14)


def test_min_modulus_full_series_positive():
    m = min_modulus_on_circle(eulerF(4.0, alternating=True), None, 17.0, grid=256)
    assert m > 0.0


# ---------------------------------------------------------------------------
# s2_root_modulus
# ---------------------------------------------------------------------------

def test_s2_root_modulus_values():
    assert s2_root_modulus(4.0) == pytest.approx(math.sqrt(85.0), rel=1e-14)
    assert s2_root_modulus(3.6) == pytest.approx(
        math.sqrt(4.6 * 13.96), rel=1e-12
    )


def test_s2_root_modulus_matches_quadratic_roots():
    # direct quadratic-root oracle on 1 - z/(a+1) + z^2/((a+1)(a^2+1))
    for a in (3.6, 3.9, 4.2):
        coeffs = [1.0 / ((a + 1.0) * (a * a + 1.0)), -1.0 / (a + 1.0), 1.0]
        roots = np.roots(coeffs)
        assert abs(roots[0]) == pytest.approx(s2_root_modulus(a), rel=1e-9)


def test_s2_root_modulus_precondition():
    with pytest.raises(RealRootsError):
        s2_root_modulus(5.0)  # a^2 - 4a - 3 = 2 > 0
