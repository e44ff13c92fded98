"""Executable inequality suites over parameter grids.

Each suite re-evaluates one family of inequalities used by the analysis:
circle minima, tail-vs-minimum domination gaps, the block inequalities
behind the disk counts, sign alternation at the block radii, positivity on
[0, a+1], and the cubic-minimum algebra.  Quantities with both a closed
form and a direct series route are computed both ways; margins are the
certified slack of each inequality, and out-of-hypothesis grid points are
recorded as inapplicable rather than failed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .criteria import (
    cubic_aux_margin,
    cubic_critical_points,
    cubic_profile,
    cubic_reduced_margin,
)
from .errors import ParameterError
from .series import (
    FamilyKind,
    SeriesFamily,
    evaluate_many,
    scaled_real_value,
    tail_bound,
)
from .zerocount import grid_min_modulus, rho_radius

_GRID_DENSITY = 2048
_SEPTIC_ROOT_CEIL = 3.16259  # tail-vs-minimum gap opens above the septic root


@dataclass
class CheckResult:
    """Outcome of one check suite over its grid."""

    name: str
    grid_points: int
    failures: List[Dict] = field(default_factory=list)
    inapplicable: List[Dict] = field(default_factory=list)
    worst_margin: float = math.inf

    def record(self, margin: float, **params) -> None:
        self.worst_margin = min(self.worst_margin, margin)
        if margin < 0.0:
            self.failures.append({"margin": margin, **params})

    @property
    def passed(self) -> bool:
        return not self.failures


def _q_closed(a: float, n: int) -> float:
    return a * (1.0 + a ** (-n)) / (1.0 + a ** (1 - n))


# ---------------------------------------------------------------------------
# circle minimum of the degree-2 section
# ---------------------------------------------------------------------------

def check_circle_minimum(a_grid: Sequence[float]) -> CheckResult:
    """On |z| = a^2+1 the degree-2 section modulus has minimum exactly 1
    while q_2 is in [3, 4): numeric minimum vs 1 within 1e-8, negative
    parabola discriminant, and vertex location >= 1."""
    res = CheckResult("circle_minimum", len(a_grid))
    for a in a_grid:
        q2 = _q_closed(a, 2)
        if not 3.0 <= q2 < 4.0:
            res.inapplicable.append({"a": a, "q2": q2})
            continue
        fam = SeriesFamily(FamilyKind.EULER_F, a, alternating=True)
        numeric = grid_min_modulus(fam, 2, a * a + 1.0, grid=512)
        res.record(1e-8 - abs(numeric - 1.0), a=a, kind="numeric_min", value=numeric)
        disc = q2 * (q2 - 1.0) ** 2 * (q2 - 4.0)
        res.record(-disc, a=a, kind="discriminant", value=disc)
        vertex = (1.0 + q2) / 4.0
        res.record(vertex - 1.0, a=a, kind="vertex", value=vertex)
    return res


# ---------------------------------------------------------------------------
# tail bound vs circle minimum
# ---------------------------------------------------------------------------

def check_tail_gap(a_grid: Sequence[float]) -> CheckResult:
    """The degree->=3 tail bound on |z| = a^2+1 stays strictly below the
    circle minimum 1 once a clears the septic-root threshold."""
    res = CheckResult("tail_gap", len(a_grid))
    for a in a_grid:
        if a <= _SEPTIC_ROOT_CEIL:
            res.inapplicable.append({"a": a})
            continue
        bound = tail_bound(SeriesFamily(FamilyKind.EULER_F, a), 3, a * a + 1.0)
        res.record(1.0 - bound, a=a, kind="tail_bound", value=bound)
    return res


# ---------------------------------------------------------------------------
# block inequalities behind the disk counts
# ---------------------------------------------------------------------------

def central_block_gap(a: float, j: int) -> Tuple[float, float]:
    """(lhs, rhs) of the block-domination inequality at index j.

    lhs is the scaled minimum of the five-term central block on the
    block radius; rhs collects the three neglected contributions: the
    low-index sum, the high-index sum (both via geometric majorants) and
    the block-completion term.
    """
    q = lambda n: _q_closed(a, n)
    sq = math.sqrt(q(j + 1))
    lhs = q(j - 1) * q(j) * sq * (2.0 - 2.0 * q(j) * sq + q(j) * q(j + 1))
    low = 1.0 / (1.0 - 1.0 / (q(j - 2) * q(j - 1) * q(j) * sq))
    high = (q(j - 1) * q(j) ** 2 / (q(j + 2) ** 2 * q(j + 3))) / (
        1.0 - 1.0 / (sq * q(j + 2) * q(j + 3) * q(j + 4))
    )
    completion = q(j - 1) * q(j) * sq * (1.0 - q(j) / q(j + 2))
    return lhs, low + high + completion


def limiting_gap_margin(a: float) -> float:
    """lhs - rhs of the constant-quotient limit of the block inequality;
    positive from roughly a > 2.17 (the gap polynomial root in sqrt(a) is
    about 1.4656)."""
    sq = math.sqrt(a)
    lhs = a * a * sq * (2.0 - 2.0 * a * sq + a * a)
    rhs = 2.0 / (1.0 - 1.0 / (a**3 * sq))
    return lhs - rhs


def check_block_inequalities(a: float, j_range: Tuple[int, int] = (4, 12)) -> CheckResult:
    """Strict block domination for each j in range, the parabola positivity
    on t in [-1, 1], finite geometric majorants, and the limiting form."""
    j_lo, j_hi = j_range
    if not (4 <= j_lo <= j_hi <= 40):
        raise ParameterError("j_range must lie within [4, 40]")
    if not a > 3.56:
        raise ParameterError("block inequalities assume a > 3.56")
    res = CheckResult(f"block_inequalities_a={a:g}", j_hi - j_lo + 1)
    q = lambda n: _q_closed(a, n)
    for j in range(j_lo, j_hi + 1):
        lhs, rhs = central_block_gap(a, j)
        res.record(lhs - rhs, a=a, j=j, kind="block_domination", lhs=lhs, rhs=rhs)
        # parabola 4t^2 - 2 q_j sqrt(q_{j+1}) t + (q_j q_{j+1} - 2) on [-1, 1]:
        # vertex beyond t = 1, so the minimum sits at t = 1
        sq = math.sqrt(q(j + 1))
        vertex = q(j) * sq / 4.0
        res.record(vertex - 1.0, a=a, j=j, kind="parabola_vertex", value=vertex)
        at_one = 2.0 - 2.0 * q(j) * sq + q(j) * q(j + 1)
        res.record(at_one, a=a, j=j, kind="parabola_min", value=at_one)
        # geometric majorants must contract
        res.record(
            1.0 - 1.0 / (q(j - 2) * q(j - 1) * q(j) * sq), a=a, j=j, kind="low_ratio"
        )
        res.record(
            1.0 - 1.0 / (sq * q(j + 2) * q(j + 3) * q(j + 4)), a=a, j=j, kind="high_ratio"
        )
    res.record(limiting_gap_margin(a), a=a, kind="limiting_form")
    return res


# ---------------------------------------------------------------------------
# sign alternation at the block radii
# ---------------------------------------------------------------------------

def alternation_closed_margin(a: float, k: int) -> float:
    """The closed-form reduction nu_k of the seven-term block value at the
    k-th block radius; nonnegative for a >= 3, k >= 4."""
    if k < 4:
        raise ParameterError("closed-form reduction needs k >= 4")
    q = lambda n: _q_closed(a, n)
    sq = math.sqrt(q(k + 1))
    return (
        -1.0
        + q(k - 1) * q(k) * sq
        - 2.0 * q(k - 1) * q(k) ** 2 * q(k + 1)
        + q(k - 1) * q(k) ** 2 * q(k + 1) * sq
        + q(k - 1) * q(k) ** 2 * sq / q(k + 2)
        - q(k - 1) * q(k) ** 2 / (q(k + 2) ** 2 * q(k + 3))
    )


def alternation_block_margin(a: float, k: int) -> float:
    """The same seven-term block summed directly in log space (terms
    j = k-3 .. k+3 scaled by the first one); equals the closed form."""
    if k < 4:
        raise ParameterError("block sum needs k >= 4")
    q = lambda n: _q_closed(a, n)
    log_rho = sum(math.log(q(i)) for i in range(2, k + 1)) + 0.5 * math.log(q(k + 1))

    def log_term(j: int) -> float:
        s = 0.0
        for i in range(2, j + 1):
            s += (j - i + 1) * math.log(q(i))
        return j * log_rho - s

    base = log_term(k - 3)
    total = 0.0
    for j in range(k - 3, k + 4):
        total += (-1.0) ** (j + k) * math.exp(log_term(j) - base)
    return total


def check_sign_alternation(a_grid: Sequence[float], k_max: int = 20) -> CheckResult:
    """(-1)^k * (normalized series at the k-th block radius) >= 0 for
    a >= 3, k = 2..k_max, plus the closed-form and seven-term reductions
    for k >= 4 (the window clips below that)."""
    if k_max > 30:
        raise ParameterError("k_max capped at 30")
    res = CheckResult("sign_alternation", len(a_grid) * max(0, k_max - 1))
    for a in a_grid:
        if a < 3.0:
            res.inapplicable.append({"a": a})
            continue
        fam = SeriesFamily(FamilyKind.EULER_F, a, alternating=True)
        p1 = 1.0 / fam.ratio(1)  # u -> z scale of the normalized variable
        for k in range(2, k_max + 1):
            rho = rho_radius(fam, k)
            mantissa, _, err = scaled_real_value(fam, p1 * rho)
            signed = (-1.0) ** k * mantissa
            res.record(signed + err, a=a, k=k, kind="series_sign", value=signed)
            if k >= 4:
                nu = alternation_closed_margin(a, k)
                mu = alternation_block_margin(a, k)
                res.record(nu, a=a, k=k, kind="closed_reduction", value=nu)
                res.record(mu, a=a, k=k, kind="block_sum", value=mu)
                agree = 1e-9 - abs(nu - mu) / max(1.0, abs(nu))
                res.record(agree, a=a, k=k, kind="two_route_agreement")
    return res


# ---------------------------------------------------------------------------
# positivity on [0, a+1]
# ---------------------------------------------------------------------------

def check_positivity_interval(
    a_grid: Sequence[float], n_list: Sequence[int] = (2, 3, 4, 5, 6, 7, 8)
) -> CheckResult:
    """The alternating series and each listed section stay positive on
    [0, a+1]; at the right endpoint the term chain 1 >= x/(a+1) >
    x^2/((a+1)(a^2+1)) > ... is checked termwise."""
    res = CheckResult("positivity_interval", len(a_grid) * _GRID_DENSITY)
    for a in a_grid:
        if not a > 1.0:
            res.inapplicable.append({"a": a})
            continue
        fam = SeriesFamily(FamilyKind.EULER_F, a, alternating=True)
        xs = np.linspace(0.0, a + 1.0, _GRID_DENSITY)
        vals, bnds = evaluate_many(fam, xs, 1e-13)
        margin = float(np.min(vals.real - bnds))
        res.record(margin, a=a, kind="series_positivity", value=margin)
        for n in n_list:
            term = np.ones_like(xs)
            acc = np.ones_like(xs)
            for k in range(1, n + 1):
                term = term * (-xs) * fam.ratio(k)
                acc = acc + term
            res.record(float(np.min(acc)), a=a, n=n, kind="section_positivity")
        # termwise chain at x = a + 1
        x = a + 1.0
        t_prev = x * fam.ratio(1)
        res.record(1.0 - t_prev + 1e-15, a=a, kind="chain_first_term", value=t_prev)
        for k in range(2, 9):
            t_next = t_prev * x * fam.ratio(k)
            res.record(t_prev - t_next, a=a, k=k, kind="chain_decrease")
            t_prev = t_next
    return res


# ---------------------------------------------------------------------------
# cubic-minimum algebra
# ---------------------------------------------------------------------------

def check_cubic_min_algebra(samples: int = 64, seed: int = 0) -> CheckResult:
    """For random parameters in (3.6, 4.6): the reduced quartic inequality
    tracks the sign of the cubic minimum, the auxiliary inequality holds,
    and the critical points are where the reduction needs them."""
    if samples < 10:
        raise ParameterError("samples must be >= 10")
    rng = np.random.default_rng(seed)
    res = CheckResult("cubic_min_algebra", samples)
    for _ in range(samples):
        a = float(rng.uniform(3.6, 4.6))
        b = _q_closed(a, 2)
        c = _q_closed(a, 3)
        y1, y2 = cubic_critical_points(b, c)
        res.record(y1 - 1.0, a=a, kind="y1_above_1", value=y1)
        res.record(b - y1, a=a, kind="y1_below_b", value=y1)
        res.record(y2 - b, a=a, kind="y2_above_b", value=y2)
        res.record(cubic_aux_margin(b, c), a=a, kind="aux_inequality")
        k_min = cubic_profile(y1, b, c)
        red = cubic_reduced_margin(b, c)
        if max(abs(k_min), abs(red)) > 1e-6:
            opposite = (k_min <= 0.0) == (red >= 0.0)
            res.record(1.0 if opposite else -1.0, a=a, kind="sign_agreement",
                       k_min=k_min, reduced=red)
    return res
