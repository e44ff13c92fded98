"""Series engine tests against exact rational-arithmetic oracles."""

import math
from fractions import Fraction

import numpy as np
import pytest

from lplab.errors import (
    DivergentMajorantError,
    InsufficientDataError,
    ParameterError,
    TruncationError,
)
from lplab.series import (
    FamilyKind,
    SeriesFamily,
    coefficient_log,
    evaluate,
    evaluate_many,
    evaluate_section,
    quotients,
    scaled_real_value,
    tail_bound,
)


def eulerF(a, alternating=False):
    return SeriesFamily(FamilyKind.EULER_F, a, alternating=alternating)


def theta(a, alternating=False):
    return SeriesFamily(FamilyKind.THETA, a, alternating=alternating)


def eulerH(a, alternating=False):
    return SeriesFamily(FamilyKind.EULER_H, a, alternating=alternating)


# ---------------------------------------------------------------------------
# exact-arithmetic oracles
# ---------------------------------------------------------------------------

def exact_ratio(kind, a_fr, k):
    if kind is FamilyKind.EULER_F:
        return Fraction(1) / (a_fr**k + 1)
    if kind is FamilyKind.THETA:
        return Fraction(1) / a_fr ** (2 * k - 1)
    if kind is FamilyKind.EULER_H:
        return Fraction(1) / (a_fr**k - 1)
    raise AssertionError(kind)


def exact_sum(kind, a_fr, zre_fr, zim_fr=Fraction(0), terms=60):
    """Partial sum in exact rational arithmetic (complex as Fraction pair)."""
    tre, tim = Fraction(1), Fraction(0)
    sre, sim = tre, tim
    for k in range(1, terms):
        r = exact_ratio(kind, a_fr, k)
        tre, tim = (tre * zre_fr - tim * zim_fr) * r, (tre * zim_fr + tim * zre_fr) * r
        sre += tre
        sim += tim
    return sre, sim


# ---------------------------------------------------------------------------
# coefficient_log
# ---------------------------------------------------------------------------

def test_coefficient_log_trivial_cases():
    assert coefficient_log(eulerF(2.0), 0) == 0.0
    assert coefficient_log(eulerF(2.0), 2) == pytest.approx(math.log(1.0 / 15.0), abs=1e-14)
    assert coefficient_log(theta(2.0), 3) == pytest.approx(-9.0 * math.log(2.0), abs=1e-13)


def test_coefficient_log_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        eulerF(1.0)
    with pytest.raises(ParameterError):
        eulerF(0.5)
    with pytest.raises(ParameterError):
        coefficient_log(eulerF(2.0), -1)


@pytest.mark.parametrize("fam", [eulerF(4.0), theta(2.0), eulerH(3.0)])
def test_ratio_consistency(fam):
    # exp(log a_k - log a_{k-1}) equals the closed-form ratio, k = 1..40
    for k in range(1, 41):
        lhs = math.exp(coefficient_log(fam, k) - coefficient_log(fam, k - 1))
        assert lhs == pytest.approx(fam.ratio(k), rel=1e-13)


@pytest.mark.parametrize("a", [2.5, 4.0, 5.5])
def test_coefficient_identity_via_q_product(a):
    # a_n from the p-product equals a_1 * (a_1/a_0)^{n-1} / (q_2^{n-1} ... q_n)
    fam = eulerF(a)
    qv = quotients(fam)
    for n in range(2, 26):
        log_from_p = coefficient_log(fam, n)
        log_a1 = coefficient_log(fam, 1)
        s = 0.0
        for j in range(2, n + 1):
            s += (n - j + 1) * math.log(qv.q(j))
        log_from_q = log_a1 + (n - 1) * log_a1 - s
        assert log_from_p == pytest.approx(log_from_q, rel=1e-12, abs=1e-12)


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

def test_evaluate_at_zero_is_exact():
    res = evaluate(eulerF(4.0), 0.0)
    assert res.value == 1.0
    assert res.abs_error_bound == 0.0


def test_evaluate_eulerF_against_exact_oracle():
    # sum: 1 - 5/5 + 25/85 - 125/5525 + ... = 0.27193123224...
    sre, _ = exact_sum(FamilyKind.EULER_F, Fraction(4), Fraction(-5))
    assert float(sre) == pytest.approx(0.2719312322405228, abs=1e-15)
    res = evaluate(eulerF(4.0), -5.0, rel_tol=1e-14)
    assert abs(res.value - float(sre)) <= res.abs_error_bound


def test_evaluate_theta_against_exact_oracle():
    sre, _ = exact_sum(FamilyKind.THETA, Fraction(2), Fraction(-2), terms=40)
    assert float(sre) == pytest.approx(0.2346181878817788, abs=1e-15)
    res = evaluate(theta(2.0), -2.0, rel_tol=1e-14)
    assert abs(res.value - float(sre)) <= res.abs_error_bound


def test_evaluate_alternating_flag_matches_negated_argument():
    plain = evaluate(eulerF(4.0), -5.0)
    flipped = evaluate(eulerF(4.0, alternating=True), 5.0)
    assert flipped.value == pytest.approx(plain.value, rel=1e-14)


def test_evaluate_certificate_randomized():
    # 100 random (a, z), a in [2, 6], |z| <= a^3, vs a 60-term exact sum
    rng = np.random.default_rng(20240817)
    for _ in range(100):
        a_fr = Fraction(int(rng.integers(32, 97)), 16)  # a in [2, 6] exactly dyadic
        a = float(a_fr)
        radius = rng.uniform(0, a**3)
        phi = rng.uniform(0, 2 * math.pi)
        zre = Fraction(round(radius * math.cos(phi) * 1024), 1024)
        zim = Fraction(round(radius * math.sin(phi) * 1024), 1024)
        kind = [FamilyKind.EULER_F, FamilyKind.THETA, FamilyKind.EULER_H][
            int(rng.integers(0, 3))
        ]
        fam = SeriesFamily(kind, a)
        sre, sim = exact_sum(kind, a_fr, zre, zim)
        res = evaluate(fam, complex(float(zre), float(zim)), rel_tol=1e-11)
        err = abs(res.value - complex(float(sre), float(sim)))
        assert err <= res.abs_error_bound + 1e-15


def test_evaluate_many_matches_scalar():
    fam = eulerF(4.0, alternating=True)
    zs = np.array([1.0 + 2.0j, -3.0, 10.0, 0.5j])
    vals, bnds = evaluate_many(fam, zs, rel_tol=1e-13)
    for z, v, b in zip(zs, vals, bnds):
        res = evaluate(fam, complex(z), rel_tol=1e-13)
        assert abs(v - res.value) <= 1e-13 * max(1.0, abs(res.value))
        assert b >= 0.0


def test_evaluate_truncation_failure_carries_partial():
    # slow theta decay with a huge argument exhausts the term cap
    fam = theta(1.005)
    with pytest.raises(TruncationError) as exc:
        evaluate(fam, 1e60, rel_tol=1e-12)
    assert exc.value.partial is not None
    assert exc.value.partial.terms_used == 10_000


# ---------------------------------------------------------------------------
# evaluate_section
# ---------------------------------------------------------------------------

def test_section_examples():
    assert evaluate_section(eulerF(4.0, alternating=True), 1, 5.0) == pytest.approx(0.0, abs=1e-15)
    # at z = a^2 + 1 the two-term cancellation leaves exactly 1
    assert evaluate_section(eulerF(4.0, alternating=True), 2, 17.0) == pytest.approx(1.0, rel=1e-14)
    assert evaluate_section(theta(2.0), 2, 1.0) == pytest.approx(1.5625, rel=1e-15)


def test_section_full_consistency_with_tail_bound():
    fam = eulerF(4.0, alternating=True)
    for z in (2.0, -7.5, 10.0 + 3.0j):
        full = evaluate(fam, z, rel_tol=1e-14)
        for n in (3, 5, 9):
            sec = evaluate_section(fam, n, z)
            gap = abs(full.value - sec)
            assert gap <= tail_bound(fam.with_alternating(False), n + 1, abs(z)) * (1 + 1e-12) + full.abs_error_bound


# ---------------------------------------------------------------------------
# tail_bound
# ---------------------------------------------------------------------------

def test_tail_bound_closed_form_value():
    # (a^2+1)^2/((a+1)(a^3+1)) * (a^4+1)/(a^4-a^2) at a=4 equals 74273/78000
    b = tail_bound(eulerF(4.0), 3, 17.0)
    assert b == pytest.approx(74273.0 / 78000.0, rel=1e-12)
    # cross-check: it bounds the exact 40-term tail
    tail = sum(
        Fraction(17) ** k * exact_coeff(Fraction(4), k) for k in range(3, 43)
    )
    assert float(tail) < b


def exact_coeff(a_fr, k):
    c = Fraction(1)
    for j in range(1, k + 1):
        c /= a_fr**j + 1
    return c


def test_tail_bound_small_radius():
    b = tail_bound(eulerF(4.0), 3, 1.0)
    assert 0.0 < b < 1e-2
    tail = sum(Fraction(1) ** k * exact_coeff(Fraction(4), k) for k in range(3, 43))
    assert float(tail) < b


def test_tail_bound_zero_radius():
    assert tail_bound(eulerF(4.0), 0, 0.0) == 1.0
    assert tail_bound(eulerF(4.0), 2, 0.0) == 0.0


def test_tail_bound_divergent_majorant():
    with pytest.raises(DivergentMajorantError):
        tail_bound(eulerF(4.0), 1, 100.0)  # rho = 100/17 >= 1


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------

def test_quotient_examples():
    assert quotients(eulerF(3.0)).q(2) == pytest.approx(2.5, rel=1e-15)
    assert quotients(eulerF(4.0)).q(2) == pytest.approx(3.4, rel=1e-15)
    assert 3.0 <= quotients(eulerF(4.0)).q(2) < 4.0
    qv = quotients(theta(2.0))
    assert all(qv.q(n) == 4.0 for n in range(2, 30))


def test_quotient_monotonicity():
    # exact rationals: strictly increasing over the whole range 2..51
    a_fr = Fraction(4)
    exact = [(a_fr**n + 1) / (a_fr ** (n - 1) + 1) for n in range(2, 52)]
    assert all(x < y for x, y in zip(exact, exact[1:]))
    # floats agree until the gap to the limit drops below one ulp of 4.0,
    # and never decrease afterwards
    qv = quotients(eulerF(4.0))
    vals = [qv.q(n) for n in range(2, 52)]
    assert all(x < y for x, y in zip(vals[:24], vals[1:25]))
    assert all(x <= y for x, y in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(4.0, rel=1e-15)
    assert qv.monotonicity == "increasing"
    qh = quotients(eulerH(3.0))
    hvals = [qh.q(n) for n in range(2, 52)]
    assert all(x >= y for x, y in zip(hvals, hvals[1:]))
    assert all(x > y for x, y in zip(hvals[:24], hvals[1:25]))
    assert qh.monotonicity == "decreasing"


def test_quotient_identity_against_coefficients():
    fam = eulerF(3.7)
    qv = quotients(fam)
    for n in range(2, 30):
        lhs = qv.q(n)
        rhs = math.exp(
            2.0 * coefficient_log(fam, n - 1)
            - coefficient_log(fam, n - 2)
            - coefficient_log(fam, n)
        )
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_quotient_custom_and_errors():
    fam = SeriesFamily(FamilyKind.CUSTOM, custom_log_coeffs=(0.0, 0.0, -math.log(4.0)))
    qv = quotients(fam)
    assert qv.q(2) == pytest.approx(4.0, rel=1e-13)
    with pytest.raises(InsufficientDataError):
        quotients(SeriesFamily(FamilyKind.CUSTOM, custom_log_coeffs=(0.0, 0.0)))
    with pytest.raises(ParameterError):
        qv.q(1)


# ---------------------------------------------------------------------------
# scaled evaluation for huge real arguments
# ---------------------------------------------------------------------------

def test_scaled_real_value_matches_direct_in_overlap():
    fam = eulerF(4.0, alternating=True)
    for x in (3.0, 17.0, 120.0):
        m, ls, err = scaled_real_value(fam, x)
        direct = evaluate(fam, x, rel_tol=1e-14).value.real
        assert m * math.exp(ls) == pytest.approx(direct, rel=1e-11, abs=1e-11)
        assert err < 1e-9


def test_scaled_real_value_survives_overflow_scale():
    # log-scale far beyond float range must still produce a finite mantissa
    fam = theta(4.0, alternating=True)
    m, ls, err = scaled_real_value(fam, 1e120)
    assert math.isfinite(m)
    assert ls > 700.0


def test_precision_extension_hook_exact_rationals():
    # the scalar recurrence is duck-typed: exact rational inputs run the
    # whole sum in exact arithmetic
    fam = SeriesFamily(FamilyKind.EULER_F, Fraction(4))
    res = evaluate(fam, Fraction(-5), rel_tol=1e-20)
    assert isinstance(res.value, Fraction)
    oracle, _ = exact_sum(FamilyKind.EULER_F, Fraction(4), Fraction(-5), terms=res.terms_used)
    assert res.value == oracle
    sec = evaluate_section(fam, 3, Fraction(-5))
    assert sec == 1 - Fraction(-5) * 0 + sum(
        Fraction(-5) ** k * exact_coeff(Fraction(4), k) for k in range(1, 4)
    )


def test_quotients_are_scale_and_substitution_invariant():
    # q_n of c * a_k * s^k equals q_n of a_k for any c, s > 0
    fam = eulerF(3.7)
    logs = [coefficient_log(fam, k) for k in range(8)]
    scaled = SeriesFamily(
        FamilyKind.CUSTOM,
        custom_log_coeffs=tuple(
            lv + math.log(2.5) + k * math.log(0.3) for k, lv in enumerate(logs)
        ),
    )
    qv = quotients(fam)
    qs = quotients(scaled)
    for n in range(2, 8):
        assert qs.q(n) == pytest.approx(qv.q(n), rel=1e-11)
