"""Confluent hypergeometric machinery for the radial problem.

The radial bound-state profiles and the hard-wall quantization condition
both reduce to the Kummer function M(a, b; x) = 1F1(a, b; x).  Each
evaluation regime is a separate, explicitly chosen operation; nothing
dispatches silently:

* ``kummer_1f1``            power series, term by term; exact when the
                            series terminates (a a non-positive integer)
* ``kummer_1f1_asymptotic`` leading large-x growth Gamma(b)/Gamma(a) e^x x^(a-b)
* ``kummer_1f1_cosine``     oscillatory shape for deeply negative a,
                            cos(sqrt(2 b x - 4 a x) - b pi/2 + pi/4), up
                            to a slowly varying amplitude
* ``kummer_1f1_descent``    backward recurrence in a from series seeds;
                            rescues the oscillatory zone where the direct
                            series cancels catastrophically in float64

Observed float64 behaviour, which motivates the descent route: summing
the series at a = b/2 - lam costs about 2*sqrt(lam*x)/ln(10) decimal
digits to cancellation, so by lam ~ 45 at x ~ 6 the direct sum is down
to ~5 good digits and by lam ~ 100 it is noise.  The descent evaluation
stays at ~1e-13 relative error there, degrading like e^(x/2) * eps, so
it is trustworthy for x up to ~35.  Beyond the turning point
x > 2(2 lam - b) the roles flip: the exponential branch dominates, the
series is accurate again, and the descent recurrence becomes unstable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError, NumericsError

__all__ = [
    "Regime",
    "HypergeomArgs",
    "kummer_1f1",
    "kummer_1f1_poly",
    "kummer_1f1_asymptotic",
    "kummer_1f1_cosine",
    "kummer_1f1_descent",
    "gamma_fn",
]

MAX_TERMS = 10_000
REL_EPS = 1e-16       # term-to-sum ratio that counts as converged
CONSECUTIVE = 3       # how many consecutive tiny terms are required
INT_TOL = 1e-12       # window for "is an integer" classification


class Regime(enum.Enum):
    SERIES = "series"
    TERMINATING_POLYNOMIAL = "terminating-polynomial"
    LARGE_ARGUMENT_ASYMPTOTIC = "large-argument-asymptotic"
    LARGE_LAMBDA_COSINE = "large-lambda-cosine"


def _nonpositive_int(v: float) -> bool:
    n = round(v)
    return n <= 0 and abs(v - n) <= INT_TOL


@dataclass(frozen=True)
class HypergeomArgs:
    """Arguments (a, b, x) of 1F1 plus their classified regime.

    The regime is classified at construction: a within 1e-12 of a
    non-positive integer means the series terminates, everything else is
    an ordinary series.  The two asymptotic tags may be set explicitly by
    a caller to record intent, but never override the terminating
    classification (the asymptotic forms are meaningless there).
    """

    a: float
    b: float
    x: float
    regime: Regime = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        for name in ("a", "b", "x"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        terminating = _nonpositive_int(self.a)
        if self.regime is None:
            object.__setattr__(
                self,
                "regime",
                Regime.TERMINATING_POLYNOMIAL if terminating else Regime.SERIES,
            )
            return
        if terminating != (self.regime is Regime.TERMINATING_POLYNOMIAL):
            kind = "a terminating case" if terminating else "not a terminating case"
            raise DomainError(
                f"regime tag contradicts the parameters: a={self.a!r} is {kind}"
            )


def _check_b(b: float) -> None:
    if _nonpositive_int(b):
        raise DomainError(f"1F1 has a pole at non-positive integer b, got b={b!r}")


def _series(a: float, b: float, x: float) -> tuple[float, float, int]:
    """Raw power series. Returns (sum, largest |term| seen, terms used)."""
    t = 1.0
    s = 1.0
    peak = 1.0
    small = 0
    for j in range(MAX_TERMS):
        t = t * (a + j) * x / ((b + j) * (j + 1.0))
        s += t
        at = abs(t)
        if at > peak:
            peak = at
        if at < REL_EPS * abs(s):
            small += 1
            if small >= CONSECUTIVE:
                return s, peak, j + 1
        else:
            small = 0
    raise ConvergenceError(
        f"1F1({a}, {b}; {x}) series did not converge in {MAX_TERMS} terms",
        partial_sum=s,
        terms=MAX_TERMS,
    )


def _terminating_sum(a: float, b: float, x: float) -> float:
    # exactly n+1 terms, no convergence test; the polynomial case is exact
    n = int(round(-a))
    t = 1.0
    s = 1.0
    for j in range(n):
        t = t * (a + j) * x / ((b + j) * (j + 1.0))
        s += t
    return s


def kummer_1f1(args: HypergeomArgs) -> float:
    """1F1(a, b; x) by the power series with term recurrence

        t_{j+1} = t_j (a + j) x / ((b + j)(j + 1)).

    Terminating cases (a a non-positive integer within 1e-12) sum exactly
    |a| + 1 terms.  Otherwise summation stops once |t_j| / |sum| < 1e-16
    for 3 consecutive terms, or fails with ConvergenceError (carrying the
    partial sum and term count) after 10_000 terms.
    """
    _check_b(args.b)
    if args.regime is Regime.TERMINATING_POLYNOMIAL:
        return _terminating_sum(args.a, args.b, args.x)
    return _series(args.a, args.b, args.x)[0]


def kummer_1f1_poly(n: int, b: float, x: np.ndarray | float) -> np.ndarray | float:
    """Terminating series 1F1(-n, b; x) on an array argument.

    Same term recurrence as ``kummer_1f1``, vectorized over x for grid
    evaluation of bound-state profiles.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"polynomial order must be a non-negative integer, got {n!r}")
    _check_b(b)
    x_arr = np.asarray(x, dtype=float)
    t = np.ones_like(x_arr)
    s = np.ones_like(x_arr)
    for j in range(int(n)):
        t = t * (j - n) * x_arr / ((b + j) * (j + 1.0))
        s = s + t
    return float(s) if np.ndim(x) == 0 else s


def kummer_1f1_asymptotic(args: HypergeomArgs) -> float:
    """Leading growth of 1F1 for large positive x:

        Gamma(b) / Gamma(a) * e^x * x^(a - b).

    Relative accuracy improves like 1/x; callers choose when to trust it
    (see the crossover notes in the module docstring).
    """
    _check_b(args.b)
    if args.regime is Regime.TERMINATING_POLYNOMIAL:
        # 1/Gamma(a) = 0 at non-positive integer a: the polynomial does
        # not grow like e^x at all.
        raise DomainError("function does not diverge: terminating case")
    if args.x <= 0.0:
        raise DomainError(f"asymptotic form needs x > 0, got x={args.x!r}")
    return gamma_fn(args.b) / gamma_fn(args.a) * math.exp(args.x) * args.x ** (args.a - args.b)


def kummer_1f1_cosine(a: float, b: float, x0: float) -> float:
    """Oscillatory shape of 1F1(a, b; x0) for deeply negative a:

        cos(sqrt(2 b x0 - 4 a x0) - b pi/2 + pi/4),

    valid up to a slowly varying positive amplitude, so the zeros are the
    useful content.  Requires 2 b x0 - 4 a x0 > 0.
    """
    arg2 = 2.0 * b * x0 - 4.0 * a * x0
    if arg2 <= 0.0:
        raise DomainError(
            f"oscillatory form requires 2*b*x0 - 4*a*x0 > 0, got {arg2!r}"
        )
    return math.cos(math.sqrt(arg2) - 0.5 * b * math.pi + 0.25 * math.pi)


def kummer_1f1_descent(a: float, b: float, x: float) -> float:
    """1F1(a, b; x) by backward recurrence in a from series seeds.

    Seeds F(a0 + 1) and F(a0), a0 = a + K in [-0.5, 0.5), are summed
    directly (benign there), then

        F(alpha - 1) = [alpha F(alpha + 1) - (x + 2 alpha - b) F(alpha)]
                       / (b - alpha)

    walks down K integer steps to a.  In the oscillatory zone
    x < 2(2 lam - b), lam = b/2 - a, both solutions of the recurrence
    share one algebraic envelope, so rounding grows only like
    e^(x/2) * eps; past the turning point the recurrence is unstable and
    the direct series should be used instead.
    """
    _check_b(b)
    if not all(map(math.isfinite, (a, b, x))):
        raise DomainError("a, b, x must be finite")
    if _nonpositive_int(a):
        return _terminating_sum(a, b, x)
    K = max(0, math.ceil(-a - 0.5))
    a0 = a + K
    d = b - a0
    if d >= -0.5 and abs(d - round(d)) < 1e-8 and round(d) <= K:
        # the recurrence would divide by b - alpha ~ 0 on the way down
        raise NumericsError(
            f"recurrence in a would divide by b - alpha ~ 0 for a={a!r}, b={b!r}; "
            "parameters sit within 1e-8 of the degenerate line b - a in the integers"
        )
    f_hi = _series(a0 + 1.0, b, x)[0]   # F(alpha + 1)
    f_lo = _series(a0, b, x)[0]         # F(alpha)
    alpha = a0
    for _ in range(K):
        f_next = (alpha * f_hi - (x + 2.0 * alpha - b) * f_lo) / (b - alpha)
        f_hi, f_lo = f_lo, f_next
        alpha -= 1.0
    return f_lo


# Lanczos approximation, g = 7, 9 terms; ~1e-13 relative on the positive axis.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Gamma overflows float64 just past this argument.
_GAMMA_MAX_ARG = 171.62


def _sinpi(z: float) -> float:
    # z - round(z) is exact in binary fp, so the reduction loses nothing
    # even for |z| in the hundreds; sin(pi z) = (-1)^round(z) sin(pi u).
    k = round(z)
    u = z - k
    s = math.sin(math.pi * u)
    return s if k % 2 == 0 else -s


def _lanczos_pos(z: float) -> float:
    # valid for z >= 0.5
    zm = z - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    base = math.sqrt(2.0 * math.pi) * acc
    power = (zm + 0.5) * math.log(t)
    if power - t > 700.0:
        # near the float64 ceiling: decide on the full logarithm
        if math.log(base) + power - t > 709.5:
            raise DomainError(f"gamma overflows float64 for z={z!r}")
        return base * math.exp(power - t)
    if power < 700.0:
        return base * t ** (zm + 0.5) * math.exp(-t)
    # split the exponential to dodge intermediate overflow near the top
    return base * math.exp(power - t)


def gamma_fn(z: float) -> float:
    """Gamma(z) via the Lanczos approximation plus reflection.

    Relative accuracy ~1e-13 away from the poles; the supported window is
    |z| <= ~170 (beyond that float64 itself overflows or the reflection
    needs an overflowing companion value).
    """
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z!r}")
    if z <= 0.0 and z == math.floor(z):
        raise DomainError(f"gamma pole at z={z!r}")
    if z >= 0.5:
        if z > _GAMMA_MAX_ARG:
            raise DomainError(f"gamma overflows float64 for z={z!r}")
        return _lanczos_pos(z)
    w = 1.0 - z
    if w > _GAMMA_MAX_ARG:
        raise DomainError(
            f"gamma at z={z!r} needs the overflowing companion gamma({w!r})"
        )
    return math.pi / (_sinpi(z) * _lanczos_pos(w))
