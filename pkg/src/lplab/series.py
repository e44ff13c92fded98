"""Coefficient generation and certified evaluation for the studied series.

Three named one-parameter families are supported, all entire of order zero
with positive Taylor coefficients and a_0 = 1:

  eulerF : a_k = 1 / ((a+1)(a^2+1)...(a^k+1))
  theta  : a_k = a^(-k^2)            (partial theta function)
  eulerH : a_k = 1 / ((a-1)(a^2-1)...(a^k-1))

plus ``custom`` families given by a finite sequence of log-coefficients.
Coefficients are never materialized directly: a_k underflows or overflows
binary floating point long before the interesting range of k is exhausted,
so everything runs on the term recurrence t_{k+1} = t_k * z * (a_{k+1}/a_k)
and standalone coefficients are exposed in log form only.

Evaluation returns a rigorous truncation bound built from a first-neglected-
term times geometric-series majorant; the same majorant backs ``tail_bound``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import (
    DivergentMajorantError,
    InsufficientDataError,
    ParameterError,
    TruncationError,
)

_EPS = float(np.finfo(float).eps)
_TERM_CAP = 10_000


class FamilyKind(str, Enum):
    EULER_F = "eulerF"
    THETA = "theta"
    EULER_H = "eulerH"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SeriesFamily:
    """A coefficient family, optionally with the alternating sign convention.

    With ``alternating=True`` the object represents f(z) = sum (-1)^k a_k z^k,
    i.e. the original positive-coefficient series evaluated at -z.
    """

    kind: FamilyKind
    a: float = 0.0
    custom_log_coeffs: Optional[Tuple[float, ...]] = None
    alternating: bool = False

    def __post_init__(self):
        if self.kind is FamilyKind.CUSTOM:
            if not self.custom_log_coeffs:
                raise ParameterError("custom family needs at least one log-coefficient")
            object.__setattr__(
                self, "custom_log_coeffs", tuple(float(c) for c in self.custom_log_coeffs)
            )
        else:
            if not (self.a > 1.0):
                raise ParameterError(
                    f"{self.kind.value} family requires a > 1, got a={self.a!r}"
                )

    # -- coefficient ratios ------------------------------------------------

    def ratio(self, k: int) -> float:
        """a_k / a_{k-1} for k >= 1 (0.0 past the end of a custom sequence).

        Integer constants keep the arithmetic in the parameter's own scalar
        type, so extended-precision parameters stay extended-precision.
        """
        if k < 1:
            raise ParameterError("ratio index must be >= 1")
        a = self.a
        if self.kind is FamilyKind.EULER_F:
            return 1 / (a**k + 1)
        if self.kind is FamilyKind.THETA:
            return a ** (1 - 2 * k)
        if self.kind is FamilyKind.EULER_H:
            return 1 / (a**k - 1)
        lc = self.custom_log_coeffs
        if k >= len(lc):
            return 0.0
        return math.exp(lc[k] - lc[k - 1])

    def log_ratio(self, k: int) -> float:
        """ln(a_k / a_{k-1}), computed without forming a^k when it overflows."""
        if k < 1:
            raise ParameterError("ratio index must be >= 1")
        a = self.a
        if self.kind is FamilyKind.EULER_F:
            return -(k * math.log(a) + math.log1p(a ** (-k)))
        if self.kind is FamilyKind.THETA:
            return (1.0 - 2.0 * k) * math.log(a)
        if self.kind is FamilyKind.EULER_H:
            return -(k * math.log(a) + math.log1p(-(a ** (-k))))
        lc = self.custom_log_coeffs
        if k >= len(lc):
            return -math.inf
        return lc[k] - lc[k - 1]

    @property
    def n_terms(self) -> Optional[int]:
        """Number of terms for custom families, None for the entire ones."""
        if self.kind is FamilyKind.CUSTOM:
            return len(self.custom_log_coeffs)
        return None

    def with_alternating(self, alternating: bool = True) -> "SeriesFamily":
        if self.alternating == alternating:
            return self
        return SeriesFamily(self.kind, self.a, self.custom_log_coeffs, alternating)


@dataclass(frozen=True)
class EvalResult:
    """A series value with a rigorous bound on the neglected tail."""

    value: complex
    abs_error_bound: float
    terms_used: int


@dataclass(frozen=True)
class QuotientView:
    """The quotient sequences p_n = a_{n-1}/a_n and q_n = p_n/p_{n-1}.

    ``q(n) = a_{n-1}^2 / (a_{n-2} a_n)`` is scale- and substitution-invariant;
    ``monotonicity`` records how q_n moves with n and ``limit`` its limit when
    one exists in closed form.
    """

    family: SeriesFamily
    p: Callable[[int], float]
    q: Callable[[int], float]
    limit: Optional[float]
    monotonicity: str  # "increasing" | "constant" | "decreasing" | "unknown"


def coefficient_log(family: SeriesFamily, k: int) -> float:
    """ln(a_k), accumulated from log-ratios (never from a_k itself)."""
    if k < 0:
        raise ParameterError("coefficient index must be >= 0")
    if family.kind is FamilyKind.CUSTOM:
        lc = family.custom_log_coeffs
        if k >= len(lc):
            raise ParameterError(f"custom family has only {len(lc)} coefficients")
        return lc[k]
    return sum(family.log_ratio(j) for j in range(1, k + 1))


def _first_coefficient(family: SeriesFamily) -> float:
    if family.kind is FamilyKind.CUSTOM:
        return math.exp(family.custom_log_coeffs[0])
    return 1  # int: multiplying it never forces a scalar type change


def evaluate(family: SeriesFamily, z: complex, rel_tol: float = 1e-12) -> EvalResult:
    """Sum the series at ``z`` until a geometric tail majorant certifies it.

    Stops at the first k where |t_k| * rho / (1 - rho), with
    rho = |z| * a_{k+1}/a_k < 1, falls below rel_tol * max(1, |partial sum|).
    The returned ``abs_error_bound`` is that majorant plus a summation
    roundoff cushion.  The ratio sequences of all named kinds decrease in k,
    so rho dominates every later step ratio and the majorant is rigorous.

    The recurrence is duck-typed: an extended-precision scalar for ``z``
    (paired with a matching family parameter ``a``) runs the whole sum at
    that precision.
    """
    if not rel_tol > 0:
        raise ParameterError("rel_tol must be positive")
    w = -z if family.alternating else z
    term = _first_coefficient(family) * z**0
    total = term
    abs_acc = abs(term)
    if z == 0:
        return EvalResult(total, 0.0, 1)
    n_custom = family.n_terms
    absw = abs(w)
    for k in range(1, _TERM_CAP + 1):
        if n_custom is not None and k >= n_custom:
            # finite series summed exactly; only roundoff remains
            return EvalResult(total, 4.0 * _EPS * k * abs_acc, k)
        term *= w * family.ratio(k)
        total += term
        abs_acc += abs(term)
        rho = absw * family.ratio(k + 1)
        if rho < 1.0:
            tail = abs(term) * rho / (1.0 - rho)
            if tail <= rel_tol * max(1.0, abs(total)):
                bound = tail + 4.0 * _EPS * k * abs_acc
                return EvalResult(total, bound, k + 1)
    raise TruncationError(
        f"tail target not reached within {_TERM_CAP} terms at z={z!r}",
        partial=EvalResult(total, math.inf, _TERM_CAP),
    )


def evaluate_many(
    family: SeriesFamily, zs: np.ndarray, rel_tol: float = 1e-12
) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized ``evaluate`` over an array of points.

    Same recurrence and stop rule as the scalar path, driven by the largest
    |z| in the batch; returns (values, per-point error bounds).
    """
    if not rel_tol > 0:
        raise ParameterError("rel_tol must be positive")
    zs = np.asarray(zs, dtype=complex)
    w = -zs if family.alternating else zs
    term = np.full(zs.shape, complex(_first_coefficient(family)))
    total = term.copy()
    abs_acc = np.abs(term)
    absw = np.abs(w)
    wmax = float(np.max(absw)) if zs.size else 0.0
    n_custom = family.n_terms
    if wmax == 0.0 or (n_custom is not None and n_custom == 1):
        return total, np.zeros(zs.shape)
    for k in range(1, _TERM_CAP + 1):
        if n_custom is not None and k >= n_custom:
            return total, 4.0 * _EPS * k * abs_acc
        term = term * (w * family.ratio(k))
        total = total + term
        abs_acc = abs_acc + np.abs(term)
        r_next = family.ratio(k + 1)
        if wmax * r_next < 1.0:
            rho = absw * r_next
            tail = np.abs(term) * rho / (1.0 - rho)
            if np.all(tail <= rel_tol * np.maximum(1.0, np.abs(total))):
                return total, tail + 4.0 * _EPS * k * abs_acc
    raise TruncationError(
        f"tail target not reached within {_TERM_CAP} terms (vectorized batch)"
    )


def evaluate_section(family: SeriesFamily, n: int, z: complex) -> complex:
    """Exact sum of the first n+1 terms via the term recurrence (duck-typed
    like ``evaluate``)."""
    if n < 0:
        raise ParameterError("section degree must be >= 0")
    w = -z if family.alternating else z
    term = _first_coefficient(family) * z**0
    total = term
    n_custom = family.n_terms
    for k in range(1, n + 1):
        if n_custom is not None and k >= n_custom:
            break
        term *= w * family.ratio(k)
        total += term
    return total


def tail_bound(family: SeriesFamily, start_index: int, r: float) -> float:
    """Rigorous upper bound on sum_{k >= start_index} a_k r^k.

    First kept term times the geometric series in rho = r * a_{s+1}/a_s,
    which dominates every later step ratio because the ratio sequences
    decrease.  Requires rho < 1.
    """
    if start_index < 0:
        raise ParameterError("start_index must be >= 0")
    if r < 0:
        raise ParameterError("radius must be >= 0")
    n_custom = family.n_terms
    if n_custom is not None:
        # finite series: sum the remaining magnitudes exactly
        if start_index >= n_custom:
            return 0.0
        total = 0.0
        for k in range(start_index, n_custom):
            total += math.exp(family.custom_log_coeffs[k]) * r**k
        return total
    if r == 0.0:
        return _first_coefficient(family) if start_index == 0 else 0.0
    log_first = coefficient_log(family, start_index) + start_index * math.log(r)
    rho = r * family.ratio(start_index + 1)
    if rho >= 1.0:
        raise DivergentMajorantError(
            f"majorant ratio {rho:.6g} >= 1 at start={start_index}, r={r!r}"
        )
    return math.exp(log_first) / (1.0 - rho)


def quotients(family: SeriesFamily) -> QuotientView:
    """Closed-form quotient view for named kinds, numeric for custom ones."""
    a = family.a

    def _check_p(n: int) -> None:
        if n < 1:
            raise ParameterError("p(n) is defined for n >= 1")

    def _check_q(n: int) -> None:
        if n < 2:
            raise ParameterError("q(n) is defined for n >= 2")

    if family.kind is FamilyKind.EULER_F:

        def p(n: int) -> float:
            _check_p(n)
            return a**n + 1.0

        def q(n: int) -> float:
            _check_q(n)
            # (a^n+1)/(a^{n-1}+1) in a form that never overflows
            return a * (1.0 + a ** (-n)) / (1.0 + a ** (1 - n))

        return QuotientView(family, p, q, limit=a, monotonicity="increasing")

    if family.kind is FamilyKind.THETA:

        def p(n: int) -> float:
            _check_p(n)
            return a ** (2 * n - 1)

        def q(n: int) -> float:
            _check_q(n)
            return a * a

        return QuotientView(family, p, q, limit=a * a, monotonicity="constant")

    if family.kind is FamilyKind.EULER_H:

        def p(n: int) -> float:
            _check_p(n)
            return a**n - 1.0

        def q(n: int) -> float:
            _check_q(n)
            return a * (1.0 - a ** (-n)) / (1.0 - a ** (1 - n))

        return QuotientView(family, p, q, limit=a, monotonicity="decreasing")

    lc = family.custom_log_coeffs
    if len(lc) < 3:
        raise InsufficientDataError(
            "quotients need at least 3 custom coefficients, got " + str(len(lc))
        )

    def p(n: int) -> float:
        _check_p(n)
        if n >= len(lc):
            raise ParameterError(f"p({n}) outside custom range")
        return math.exp(lc[n - 1] - lc[n])

    def q(n: int) -> float:
        _check_q(n)
        if n >= len(lc):
            raise ParameterError(f"q({n}) outside custom range")
        return math.exp(2.0 * lc[n - 1] - lc[n - 2] - lc[n])

    return QuotientView(family, p, q, limit=None, monotonicity="unknown")


def scaled_real_value(
    family: SeriesFamily, x: float, drop: float = 60.0
) -> Tuple[float, float, float]:
    """Evaluate the series at real x > 0 as mantissa * exp(log_scale).

    Intended for sign checks at arguments where individual terms overflow
    float range.  Returns (mantissa, log_scale, mantissa_error_bound); the
    true value is mantissa * exp(log_scale) with |error| <= the bound at the
    mantissa scale.  Terms are accumulated relative to the largest one; the
    sum stops once log-terms have fallen ``drop`` nats below the peak and a
    geometric majorant bounds the remainder.
    """
    if x <= 0:
        raise ParameterError("scaled_real_value needs x > 0")
    logx = math.log(x)
    log_terms = [math.log(_first_coefficient(family))]
    k = 0
    while True:
        k += 1
        if k > _TERM_CAP:
            raise TruncationError(f"no decay within {_TERM_CAP} terms at x={x!r}")
        lr = family.log_ratio(k)
        if lr == -math.inf:
            tail_scaled = 0.0
            break
        log_terms.append(log_terms[-1] + logx + lr)
        peak = max(log_terms)
        step = logx + family.log_ratio(k + 1)
        if log_terms[-1] < peak - drop and step < 0.0:
            # geometric tail beyond the last computed term, relative to peak
            ratio = math.exp(step)
            tail_scaled = math.exp(log_terms[-1] - peak) * ratio / (1.0 - ratio)
            break
    log_scale = max(log_terms)
    mantissa = 0.0
    for j, lt in enumerate(log_terms):
        t = math.exp(lt - log_scale)
        mantissa += -t if (family.alternating and j % 2) else t
    err = tail_scaled + 4.0 * _EPS * len(log_terms)
    return mantissa, log_scale, err
