"""Inequality check suites: passing grids, inapplicable points, and
expected-fail fixtures (guards against vacuously green checks)."""

import pytest

from lplab.errors import ParameterError
from lplab.verify import (
    alternation_block_margin,
    alternation_closed_margin,
    central_block_gap,
    check_block_inequalities,
    check_circle_minimum,
    check_cubic_min_algebra,
    check_positivity_interval,
    check_sign_alternation,
    check_tail_gap,
    limiting_gap_margin,
)


def test_circle_minimum_passes_in_range():
    res = check_circle_minimum([3.6, 3.8, 4.0, 4.3, 4.6])
    assert res.passed
    assert res.worst_margin >= 0.0
    assert not res.inapplicable


def test_circle_minimum_boundary_and_inapplicable():
    res = check_circle_minimum([3.5616, 5.0])
    # q_2(3.5616) is just above 3 (vertex at 1); q_2(5) = 26/6 > 4
    assert res.passed
    assert len(res.inapplicable) == 1
    assert res.inapplicable[0]["a"] == 5.0


def test_tail_gap_values():
    res = check_tail_gap([4.0])
    assert res.passed
    # 1 - 74273/78000
    assert res.worst_margin == pytest.approx(1.0 - 74273.0 / 78000.0, rel=1e-9)
    res = check_tail_gap([3.5616, 4.0, 4.6])
    assert res.passed
    res = check_tail_gap([3.0])
    assert len(res.inapplicable) == 1
    assert res.grid_points == 1


def test_block_inequalities_pass():
    for a in (3.57, 4.0, 4.6):
        res = check_block_inequalities(a, (4, 12))
        assert res.passed, res.failures[:3]
        assert res.worst_margin >= 0.0


def test_block_inequalities_wide_j():
    res = check_block_inequalities(3.57, (4, 40))
    assert res.passed


def test_block_inequalities_preconditions():
    with pytest.raises(ParameterError):
        check_block_inequalities(2.0)
    with pytest.raises(ParameterError):
        check_block_inequalities(4.0, (2, 12))


def test_block_gap_two_sides():
    lhs, rhs = central_block_gap(4.0, 6)
    assert lhs > rhs > 0.0


def test_limiting_form_expected_fail_below_threshold():
    # fails at a = 2.0 (sqrt(a) = 1.414 is below the gap-poly root 1.4656)
    assert limiting_gap_margin(2.0) < 0.0
    assert limiting_gap_margin(2.2) > 0.0  # and holds just above
    assert limiting_gap_margin(3.57) > 0.0


def test_sign_alternation_passes():
    res = check_sign_alternation([3.0, 3.5, 4.0, 4.6], k_max=20)
    assert res.passed, res.failures[:3]


def test_sign_alternation_inapplicable_below_three():
    res = check_sign_alternation([2.0], k_max=10)
    assert res.inapplicable == [{"a": 2.0}]
    assert res.passed


def test_sign_alternation_two_routes_agree():
    for a in (3.0, 4.0):
        for k in (4, 8, 15):
            nu = alternation_closed_margin(a, k)
            mu = alternation_block_margin(a, k)
            assert nu == pytest.approx(mu, rel=1e-10)
            assert nu >= 0.0


def test_sign_alternation_caps_k():
    with pytest.raises(ParameterError):
        check_sign_alternation([4.0], k_max=31)


def test_positivity_interval_passes():
    res = check_positivity_interval([4.0], n_list=list(range(2, 9)))
    assert res.passed, res.failures[:3]
    assert res.worst_margin >= 0.0


def test_positivity_endpoint_chain():
    res = check_positivity_interval([3.2, 4.5])
    assert res.passed
    chain = [f for f in res.failures if "chain" in str(f.get("kind"))]
    assert chain == []


def test_cubic_min_algebra_passes():
    res = check_cubic_min_algebra(samples=64, seed=0)
    assert res.passed, res.failures[:3]


def test_cubic_min_algebra_deterministic_per_seed():
    a = check_cubic_min_algebra(samples=32, seed=7)
    b = check_cubic_min_algebra(samples=32, seed=7)
    assert a.worst_margin == b.worst_margin
    with pytest.raises(ParameterError):
        check_cubic_min_algebra(samples=5)
