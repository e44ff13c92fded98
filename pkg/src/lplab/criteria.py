"""Membership criteria for the Laguerre-Polya class.

Four mechanisms, in increasing strength for the Euler-type family:

  * ``necessary_q2``      : q_2 >= 3 is necessary when q_n is nondecreasing.
  * ``hutchinson_test``   : q_n >= 4 for all n >= 2 is sufficient.
  * ``six_term_section_test`` : a one-point sign certificate on the degree-6
    section at z0 = (2/3)(a+1)q_2; sufficient only.
  * ``sign_test_euler`` / ``sign_test_theta`` : the decisive minimum-value
    sign tests on (a+1, a^2+1) resp. (a, a^3); these are equivalences.

Verdicts near a threshold fall into a Boundary band sized by the combined
numerical error; thresholds met *exactly* in exact rational arithmetic count
as satisfied for the inclusive >= criteria.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import ConsistencyError, ParameterError, PreconditionError
from .polyroots import RealPolynomial, isolate_real_roots, refine
from .series import (
    FamilyKind,
    SeriesFamily,
    evaluate,
    evaluate_many,
    quotients,
)

_EPS = float(np.finfo(float).eps)


class Verdict(str, Enum):
    IN_LP = "InLP"
    NOT_IN_LP = "NotInLP"
    BOUNDARY = "Boundary"
    INAPPLICABLE = "Inapplicable"


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of one membership criterion.

    ``margin`` is the decisive quantity minus its threshold (q_min - 4 for
    the quotient tests, the interval minimum minus 0 for the sign tests);
    which sign favors membership depends on the criterion and is stated in
    each operation's docstring.  Witness fields are set by the sign tests
    only.
    """

    criterion: str
    verdict: Verdict
    margin: float
    witness_x: Optional[float] = None
    witness_value: Optional[float] = None


# ---------------------------------------------------------------------------
# exact quotient arithmetic helpers
# ---------------------------------------------------------------------------

def _exact_q2(family: SeriesFamily) -> Optional[Fraction]:
    """q_2 as an exact rational of the (dyadic) float parameter."""
    a = Fraction(family.a)
    if family.kind is FamilyKind.EULER_F:
        return (a * a + 1) / (a + 1)
    if family.kind is FamilyKind.THETA:
        return a * a
    if family.kind is FamilyKind.EULER_H:
        return a + 1  # (a^2-1)/(a-1)
    return None


def _exact_q_infimum(family: SeriesFamily) -> Optional[Fraction]:
    """inf_n q_n as an exact rational, when q_n is monotone in closed form."""
    a = Fraction(family.a)
    if family.kind is FamilyKind.EULER_F:
        return (a * a + 1) / (a + 1)  # increasing, so the infimum is q_2
    if family.kind is FamilyKind.THETA:
        return a * a
    if family.kind is FamilyKind.EULER_H:
        return a  # decreasing with limit a (not attained)
    return None


def _verdict_band(scale: float) -> float:
    return 64.0 * _EPS * max(1.0, scale)


# ---------------------------------------------------------------------------
# quotient criteria
# ---------------------------------------------------------------------------

def hutchinson_test(family: SeriesFamily, n_max: int = 20) -> CriterionReport:
    """Sufficient test: q_n >= 4 for every n >= 2 forces real zeros.

    Monotone closed-form quotients extend the finite window to all n
    (increasing: q_2 decides; constant: q decides; decreasing: the limit
    decides).  A positive margin (or an exactly-zero one, since the
    criterion is inclusive) gives InLP; without a closed-form extension the
    verdict is Inapplicable.
    """
    if n_max < 2:
        raise ParameterError("n_max must be >= 2")
    qv = quotients(family)
    window_min = min(qv.q(n) for n in range(2, n_max + 1))
    exact_inf = _exact_q_infimum(family)
    if exact_inf is None:
        return CriterionReport("hutchinson", Verdict.INAPPLICABLE, window_min - 4.0)
    exact_margin = exact_inf - 4
    margin = float(exact_margin)
    if exact_margin == 0:
        # threshold attained exactly in exact arithmetic: inclusive test holds
        return CriterionReport("hutchinson", Verdict.IN_LP, 0.0)
    if abs(margin) <= _verdict_band(float(exact_inf)):
        return CriterionReport("hutchinson", Verdict.BOUNDARY, margin)
    if margin > 0:
        return CriterionReport("hutchinson", Verdict.IN_LP, margin)
    return CriterionReport("hutchinson", Verdict.INAPPLICABLE, margin)


def necessary_q2(family: SeriesFamily) -> CriterionReport:
    """Necessary condition for families with nondecreasing quotients:
    membership forces q_2 >= 3, so q_2 < 3 certifies NotInLP.  q_2 >= 3
    concludes nothing (Inapplicable); a q_2 within numerical resolution of
    3 is reported Boundary."""
    qv = quotients(family)
    if qv.monotonicity == "decreasing":
        raise PreconditionError("necessary_q2 requires nondecreasing quotients")
    if qv.monotonicity == "unknown":
        qs = [qv.q(n) for n in range(2, len(family.custom_log_coeffs))]
        if any(x > y * (1.0 + 1e-12) for x, y in zip(qs, qs[1:])):
            raise PreconditionError("custom quotients are not nondecreasing")
    exact = _exact_q2(family)
    margin = float(exact - 3) if exact is not None else qv.q(2) - 3.0
    scale = float(exact) if exact is not None else qv.q(2)
    if margin < -_verdict_band(scale):
        return CriterionReport("q2_necessary", Verdict.NOT_IN_LP, margin)
    if abs(margin) <= _verdict_band(scale):
        return CriterionReport("q2_necessary", Verdict.BOUNDARY, margin)
    return CriterionReport("q2_necessary", Verdict.INAPPLICABLE, margin)


# ---------------------------------------------------------------------------
# interval minimization
# ---------------------------------------------------------------------------

def _golden_min(
    fn: Callable[[float], Tuple[float, float]], lo: float, hi: float
) -> Tuple[float, float, float]:
    inv_gr = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_gr * (hi - lo)
    x2 = lo + inv_gr * (hi - lo)
    f1, _ = fn(x1)
    f2, _ = fn(x2)
    for _ in range(90):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_gr * (hi - lo)
            f1, _ = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_gr * (hi - lo)
            f2, _ = fn(x2)
    x = x1 if f1 <= f2 else x2
    v, e = fn(x)
    return v, x, e


def minimize_on_interval(
    fn: Callable[[float], Tuple[float, float]],
    lo: float,
    hi: float,
    grid: int,
    batch: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> Tuple[float, float, float]:
    """Grid scan then golden-section refinement around the best cell.

    ``fn(x)`` returns (value, error_bound).  ``batch`` may supply the grid
    values in one vectorized call.  Returns (min_value, argmin, error)."""
    if grid < 8:
        raise ParameterError("grid must be >= 8")
    xs = np.linspace(lo, hi, grid + 2)[1:-1]
    if batch is not None:
        vals = batch(xs)
    else:
        vals = np.array([fn(float(x))[0] for x in xs])
    i = int(np.argmin(vals))
    cell_lo = xs[i - 1] if i > 0 else lo
    cell_hi = xs[i + 1] if i + 1 < len(xs) else hi
    v, x, e = _golden_min(fn, float(cell_lo), float(cell_hi))
    if vals[i] < v:
        x = float(xs[i])
        v, e = fn(x)
    return v, x, e


def _series_min(
    family: SeriesFamily, lo: float, hi: float, grid: int
) -> Tuple[float, float, float]:
    def fn(x: float) -> Tuple[float, float]:
        res = evaluate(family, x, 1e-13)
        return res.value.real, res.abs_error_bound

    def batch(xs: np.ndarray) -> np.ndarray:
        return evaluate_many(family, xs, 1e-13)[0].real

    return minimize_on_interval(fn, lo, hi, grid, batch)


def _section_value(family: SeriesFamily, n: int, x: float) -> Tuple[float, float]:
    """Section value at real x with a summation roundoff bound."""
    w = -x if family.alternating else x
    term = 1.0
    total = 1.0
    abs_acc = 1.0
    for k in range(1, n + 1):
        term *= w * family.ratio(k)
        total += term
        abs_acc += abs(term)
    return total, 4.0 * _EPS * (n + 1) * abs_acc


def _section_min(
    family: SeriesFamily, n: int, lo: float, hi: float, grid: int
) -> Tuple[float, float, float]:
    def fn(x: float) -> Tuple[float, float]:
        return _section_value(family, n, x)

    return minimize_on_interval(fn, lo, hi, grid)


# ---------------------------------------------------------------------------
# sign tests (the decisive equivalences)
# ---------------------------------------------------------------------------

def sign_test_euler(a: float, grid: int = 512, tol: float = 1e-9) -> CriterionReport:
    """Minimum of the alternating Euler-type series on (a+1, a^2+1).

    A certified negative minimum is equivalent to membership; a certified
    positive one to non-membership.  margin = interval minimum, so negative
    margin favors InLP here.
    """
    if not a > 1:
        raise ParameterError("requires a > 1")
    fam = SeriesFamily(FamilyKind.EULER_F, a, alternating=True)
    v, x, e = _series_min(fam, a + 1.0, a * a + 1.0, grid)
    return _sign_verdict("sign_test_euler", v, x, e, tol)


def sign_test_theta(
    a: float, n: Optional[int] = None, grid: int = 512, tol: float = 1e-9
) -> CriterionReport:
    """Same contract as ``sign_test_euler`` for the partial theta function
    (or its degree-n section when ``n`` is given) on (a, a^3)."""
    if not a > 1:
        raise ParameterError("requires a > 1")
    if n is not None and n < 2:
        raise ParameterError("section sign test needs n >= 2")
    fam = SeriesFamily(FamilyKind.THETA, a, alternating=True)
    if n is None:
        v, x, e = _series_min(fam, a, a**3, grid)
    else:
        v, x, e = _section_min(fam, n, a, a**3, grid)
    name = "sign_test_theta" if n is None else f"sign_test_theta_section{n}"
    return _sign_verdict(name, v, x, e, tol)


def _sign_verdict(
    name: str, v: float, x: float, e: float, tol: float
) -> CriterionReport:
    tol_eff = tol + e
    if v < -tol_eff:
        verdict = Verdict.IN_LP
    elif v > tol_eff:
        verdict = Verdict.NOT_IN_LP
    else:
        verdict = Verdict.BOUNDARY
    return CriterionReport(name, verdict, v, witness_x=x, witness_value=v)


# ---------------------------------------------------------------------------
# cubic-section threshold machinery
# ---------------------------------------------------------------------------

# a^8 - 8a^7 + 15a^6 + 12a^5 - 21a^4 - 28a^3 - 43a^2 - 40a - 16, ascending:
# the exact polynomialization of "the cubic-section minimum can be <= 0",
# i.e. of  b^2 c^2 - 4 b^2 c + 18 b c - 4 b c^2 - 27 >= 0  under
# b = (a^2+1)/(a+1), c = (a^3+1)/(a^2+1), cleared of denominators.
CUBIC_THRESHOLD_COEFFS: Tuple[int, ...] = (-16, -40, -43, -28, -21, 12, 15, -8, 1)


def cubic_profile(y: float, b: float, c: float) -> float:
    """K(y) = 1 - y + y^2/b - y^3/(b^2 c), the normalized cubic section at
    y = z/(a+1) with b = q_2 and c = q_3."""
    return 1.0 - y + y * y / b - y**3 / (b * b * c)


def cubic_critical_points(b: float, c: float) -> Tuple[float, float]:
    """Roots (y1, y2) of K'(y); requires c > 3 for a positive discriminant.
    y1 is the interior local minimum, y1 in (1, b) and y2 > b for the
    parameter range of interest."""
    if not c > 3.0:
        raise ParameterError("critical points need c > 3")
    root = b * math.sqrt(c * (c - 3.0))
    return (b * c - root) / 3.0, (b * c + root) / 3.0


def cubic_reduced_margin(b: float, c: float) -> float:
    """b^2 c^2 - 4 b^2 c + 18 b c - 4 b c^2 - 27; this is >= 0 exactly when
    K(y1) <= 0 (given the auxiliary inequality below holds)."""
    return b * b * c * c - 4.0 * b * b * c + 18.0 * b * c - 4.0 * b * c * c - 27.0


def cubic_aux_margin(b: float, c: float) -> float:
    """27 - 9 b c + 2 b c^2, nonnegative throughout the working range; its
    sign legitimizes squaring in the reduction to ``cubic_reduced_margin``."""
    return 27.0 - 9.0 * b * c + 2.0 * b * c * c


def cubic_section_threshold(tol: float = 1e-12) -> float:
    """The parameter value above which the cubic-section certificate can
    fire: the unique root of ``CUBIC_THRESHOLD_COEFFS`` in [3, 5]
    (approximately 3.90155)."""
    p = RealPolynomial(tuple(float(c) for c in CUBIC_THRESHOLD_COEFFS))
    brackets = isolate_real_roots(p, (3.0, 5.0))
    if len(brackets) != 1:
        raise ConsistencyError(
            f"expected one threshold root in [3, 5], found {len(brackets)}"
        )
    return refine(p, brackets[0], tol)


# ---------------------------------------------------------------------------
# six-term section certificate
# ---------------------------------------------------------------------------

def _polymul(p: List[int], q: List[int]) -> List[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi:
            for j, qj in enumerate(q):
                out[i + j] += pi * qj
    return out


def _six_term_expansion() -> Tuple[int, ...]:
    """Exact integer expansion of 729 (a+1)(a^3+1)(a^4+1)(a^5+1)(a^6+1)
    times the six-term closed form; same sign as the section value at z0."""

    def unit(j: int) -> List[int]:
        p = [0] * (j + 1)
        p[0] = 1
        p[j] = 1
        return p

    def prod(js: List[int], scale: int) -> List[int]:
        acc = [scale]
        for j in js:
            acc = _polymul(acc, unit(j))
        return acc

    def padd(p: List[int], q: List[int]) -> List[int]:
        n = max(len(p), len(q))
        return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]

    sq = unit(2)
    total = prod([1, 3, 4, 5, 6], 729)
    total = padd(total, _polymul(prod([3, 4, 5, 6], -162), sq))
    total = padd(total, _polymul(prod([4, 5, 6], -216), _polymul(sq, sq)))
    total = padd(total, _polymul(prod([5, 6], 144), _polymul(sq, _polymul(sq, sq))))
    sq4 = _polymul(_polymul(sq, sq), _polymul(sq, sq))
    total = padd(total, _polymul(prod([6], -96), sq4))
    total = padd(total, _polymul([64], _polymul(sq4, sq)))
    return tuple(total)


SIX_TERM_EXPANSION_COEFFS: Tuple[int, ...] = _six_term_expansion()

# Reference coefficient set for the same degree-20 polynomial as previously
# reported; it differs from the exact expansion above across the a^5..a^14
# band and at a^17, and its largest root is near 3.91718 instead of 3.96426.
# Kept as comparison data only.
SIX_TERM_REFERENCE_COEFFS: Tuple[int, ...] = (
    463, 729, -226, 567, 1360, 966, 1030, 750, 1142, 1125, 1927,
    228, 846, 822, 918, 1134, 567, -594, 567, 513, -162,
)


def _horner_with_error(coeffs: Tuple[int, ...], x: float) -> Tuple[float, float]:
    acc = 0.0
    abs_acc = 0.0
    ax = abs(x)
    for c in reversed(coeffs):
        acc = acc * x + c
        abs_acc = abs_acc * ax + abs(c)
    return acc, 4.0 * _EPS * len(coeffs) * abs_acc


def six_term_certificate_values(a: float) -> Tuple[float, float, float]:
    """(closed form, direct section, exact-expansion polynomial) at
    z0 = (2/3)(a+1) q_2 for the alternating Euler-type series."""
    fam = SeriesFamily(FamilyKind.EULER_F, a, alternating=True)
    qv = quotients(fam)
    q2, q3, q4, q5, q6 = (qv.q(j) for j in range(2, 7))
    closed = (
        1.0
        - (2.0 / 9.0) * q2
        - (8.0 / 27.0) * (q2 / q3)
        + (16.0 / 81.0) * (q2 / (q3 * q3 * q4))
        - (32.0 / 243.0) * (q2 / (q3**3 * q4 * q4 * q5))
        + (64.0 / 729.0) * (q2 / (q3**4 * q4**3 * q5 * q5 * q6))
    )
    z0 = (2.0 / 3.0) * (a + 1.0) * q2
    direct, _ = _section_value(fam, 6, z0)
    poly, _ = _horner_with_error(SIX_TERM_EXPANSION_COEFFS, a)
    return closed, direct, poly


def six_term_section_test(a: float, tol: float = 1e-9) -> CriterionReport:
    """Sufficient one-point certificate on the degree-6 section.

    Evaluates the section at z0 = (2/3)(a+1) q_2 through the six-term
    closed form and independently through the term recurrence (they must
    agree to 1e-9), and cross-checks the sign against the exact
    integer-coefficient polynomialization.  A certified nonpositive value
    implies a nonpositive full-series value at z0 and hence membership;
    a positive value concludes nothing.
    """
    if not a > 1:
        raise ParameterError("requires a > 1")
    closed, direct, _ = six_term_certificate_values(a)
    denom = max(1.0, abs(closed), abs(direct))
    if abs(closed - direct) > 1e-9 * denom:
        raise ConsistencyError(
            f"six-term closed form {closed!r} and direct section {direct!r} "
            "disagree beyond 1e-9 relative"
        )
    poly, poly_err = _horner_with_error(SIX_TERM_EXPANSION_COEFFS, a)
    band = tol + 64.0 * _EPS
    if abs(closed) > band and abs(poly) > 10.0 * poly_err:
        if (closed < 0) != (poly < 0):
            raise ConsistencyError(
                f"section value {closed!r} and exact polynomialization "
                f"{poly!r} disagree in sign at a={a!r}"
            )
    z0 = (2.0 / 3.0) * (a + 1.0) * quotients(SeriesFamily(FamilyKind.EULER_F, a)).q(2)
    if closed <= -band:
        verdict = Verdict.IN_LP
    elif abs(closed) <= band:
        verdict = Verdict.BOUNDARY
    else:
        verdict = Verdict.INAPPLICABLE
    return CriterionReport(
        "six_term_section", verdict, closed, witness_x=z0, witness_value=closed
    )


# ---------------------------------------------------------------------------
# decision cascade
# ---------------------------------------------------------------------------

def classify_euler(a: float, grid: int = 512, tol: float = 1e-9) -> CriterionReport:
    """Decision cascade for the Euler-type family:
    q2_necessary -> hutchinson -> six_term_section -> sign_test_euler.

    The first InLP/NotInLP wins and names its criterion; the sign test is
    the authoritative equivalence and supplies the fallback verdict.
    """
    if not a > 1:
        raise ParameterError("requires a > 1")
    fam = SeriesFamily(FamilyKind.EULER_F, a)
    rep = necessary_q2(fam)
    if rep.verdict is Verdict.NOT_IN_LP:
        return rep
    rep = hutchinson_test(fam)
    if rep.verdict is Verdict.IN_LP:
        return rep
    rep = six_term_section_test(a, tol)
    if rep.verdict is Verdict.IN_LP:
        return rep
    return sign_test_euler(a, grid, tol)
