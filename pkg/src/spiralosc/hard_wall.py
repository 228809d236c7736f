"""Hard-wall confinement: exact and closed-form spectra at a wall radius.

An impenetrable wall at r = r0 imposes f(x0) = 0 where
x0 = m w (r0^2 + beta^2): the defect enters the boundary condition only
through the effective radius rho0 = sqrt(r0^2 + beta^2).  Exact levels
are therefore zeros, in the spectral parameter lam, of

    F(lam) = 1F1(b/2 - lam, b; x0),        b = |l| + 1,

while the large-lam cosine form of the confluent function collapses the
quantization to sqrt(4 lam x0) = n pi + |l| pi/2 + 3 pi/4, i.e.

    E_n ~ (n pi + |l| pi/2 + 3 pi/4)^2 / (2 m (r0^2 + beta^2))
          - m w^2 beta^2 / 2 + k^2 / 2m.

The closed form stays meaningful at w = 0 (pure wall, shift term gone);
the exact root-finder needs w > 0 since lam itself does.

Numerical note: the zeros sit deep in the oscillatory regime of 1F1,
where the direct power series cancels catastrophically (roughly
2 sqrt(lam x0) / ln 10 decimal digits lost).  The boundary value is
therefore evaluated by whichever of the series / terminating /
backward-recurrence evaluators is reliable at the given (lam, x0); the
practical ceiling is x0 of a few tens, far beyond any wall this package
targets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketError, DomainError, NumericsError
from .geometry import DislocationParams
from .kummer import HypergeomArgs, kummer_1f1, kummer_1f1_descent
from .oscillator import lambda_of_energy

__all__ = ["HardWallConfig", "approx_energy", "boundary_value", "exact_energy"]

# dispatch thresholds for the boundary-value evaluator, measured against
# an extended-precision series: cancellation costs the direct series
# ~2 sqrt(lam x)/ln 10 decimal digits (6 lost still leaves ~1e-10, ample
# for locating sign changes); the backward recurrence holds ~1e-13 in
# the oscillatory zone x < 2(2 lam - b) but falls apart approaching the
# turning point, and the series becomes accurate again past it
_SERIES_MAX_LOST_DIGITS = 6.0
_DESCENT_ZONE = 0.8       # use recurrence only for x below this fraction of x_t
_SERIES_ZONE = 1.3        # use series again above this fraction of x_t
_DESCENT_X_MAX = 36.0     # growth of rounding error ~ e^(x/2) beyond this


@dataclass(frozen=True)
class HardWallConfig:
    """Wall radius plus the medium and the conserved numbers l, k."""

    r0: float
    params: DislocationParams
    l: int = 0
    k: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.r0) and self.r0 > 0.0):
            raise DomainError(f"r0 must be finite and > 0, got {self.r0!r}")
        if self.l != int(self.l):
            raise DomainError(f"l must be an integer, got {self.l!r}")
        if not math.isfinite(self.k):
            raise DomainError(f"k must be finite, got {self.k!r}")

    @property
    def rho0(self) -> float:
        """Effective wall radius sqrt(r0^2 + beta^2) >= r0."""
        return math.hypot(self.r0, self.params.beta)

    @property
    def x0(self) -> float:
        """Boundary value of the radial variable, m w (r0^2 + beta^2)."""
        p = self.params
        return p.mass * p.omega * (self.r0 ** 2 + p.beta ** 2)


def approx_energy(cfg: HardWallConfig, n: int) -> float:
    """Closed-form large-lam level; valid (shift-free) at omega = 0 too."""
    if n != int(n) or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    p = cfg.params
    q = n * math.pi + abs(cfg.l) * math.pi / 2.0 + 3.0 * math.pi / 4.0
    return (
        q * q / (2.0 * p.mass * (cfg.r0 ** 2 + p.beta ** 2))
        - 0.5 * p.mass * p.omega ** 2 * p.beta ** 2
        + cfg.k ** 2 / (2.0 * p.mass)
    )


def _kummer_for_boundary(a: float, b: float, x: float) -> float:
    # pick the evaluator that is actually reliable at this (a, b, x)
    args = HypergeomArgs(a=a, b=b, x=x)
    if args.regime.name == "TERMINATING_POLYNOMIAL":
        return kummer_1f1(args)
    lam = 0.5 * b - a
    lost = 2.0 * math.sqrt(lam * x) / math.log(10.0) if lam > 0.0 else 0.0
    if lost <= _SERIES_MAX_LOST_DIGITS:
        return kummer_1f1(args)
    x_turn = 2.0 * (2.0 * lam - b)
    if x_turn > 0.0 and x >= _SERIES_ZONE * x_turn:
        return kummer_1f1(args)
    if x_turn > 0.0 and x <= _DESCENT_ZONE * x_turn and x <= _DESCENT_X_MAX:
        return kummer_1f1_descent(a, b, x)
    raise NumericsError(
        "1F1 not resolvable in double precision near the turning point: "
        f"a={a!r}, b={b!r}, x={x!r}"
    )


def boundary_value(cfg: HardWallConfig, energy: float) -> float:
    """Radial profile at the wall, e^{-x0/2} x0^{|l|/2} 1F1(a, b; x0).

    Exact hard-wall energies are the zeros of this function of energy.
    """
    p = cfg.params
    if p.omega <= 0.0:
        raise DomainError("boundary_value needs omega > 0")
    lam = lambda_of_energy(p, cfg.k, energy)
    labs = abs(cfg.l)
    b = labs + 1.0
    a = 0.5 * b - lam
    x0 = cfg.x0
    return math.exp(-0.5 * x0) * x0 ** (0.5 * labs) * _kummer_for_boundary(a, b, x0)


def _energy_of_q(cfg: HardWallConfig, q: float) -> float:
    p = cfg.params
    lam = q * q / (4.0 * cfg.x0)
    return (
        2.0 * p.omega * lam
        - 0.5 * p.mass * p.omega ** 2 * p.beta ** 2
        + cfg.k ** 2 / (2.0 * p.mass)
    )


def exact_energy(cfg: HardWallConfig, n: int, *, e_tol: float | None = None,
                 max_bisections: int = 200, max_expansions: int = 20) -> float:
    """Energy of the (n+1)-th zero of the wall boundary value.

    Zeros are indexed in increasing order, n = number of radial nodes
    inside the wall.  Root finding runs in the phase-like variable
    q = sqrt(4 lam x0), where zeros are asymptotically pi-spaced: the
    closed-form estimate seeds a +-1 bracket in q, widened geometrically
    if needed; a scan from the bottom of the spectrum (no zeros exist
    below lam = b/2) confirms the zero count so the right level is
    bisected even where the estimate is poor.
    """
    p = cfg.params
    if p.omega <= 0.0:
        raise DomainError("exact_energy needs omega > 0; at omega = 0 "
                          "only approx_energy and the shooting oracle apply")
    if n != int(n) or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")

    b = abs(cfg.l) + 1.0
    x0 = cfg.x0

    def g(q: float) -> float:
        return boundary_value(cfg, _energy_of_q(cfg, q))

    # below lam = b/2 every series term is positive: no zeros down there
    q_floor = math.sqrt(2.0 * b * x0) * (1.0 + 1e-12) + 1e-12
    q_seed = n * math.pi + abs(cfg.l) * math.pi / 2.0 + 3.0 * math.pi / 4.0

    lo = max(q_seed - 1.0, q_floor)
    hi = max(q_seed + 1.0, lo + 2.0)
    bracket = None
    for j in range(max_expansions + 1):
        # count sign changes from the bottom up to lo, then inside [lo, hi];
        # pi/2 steps cannot skip a pair of the ~pi-spaced simple zeros
        below = 0
        q_prev, g_prev = q_floor, g(q_floor)
        while q_prev < lo:
            q_next = min(q_prev + math.pi / 2.0, lo)
            g_next = g(q_next)
            if g_prev == 0.0 or (g_prev < 0.0) != (g_next < 0.0):
                below += 1
            q_prev, g_prev = q_next, g_next
        if below <= n:
            want = n - below  # how many more sign changes to skip inside
            while q_prev < hi:
                q_next = min(q_prev + math.pi / 2.0, hi)
                g_next = g(q_next)
                if g_prev == 0.0 or (g_prev < 0.0) != (g_next < 0.0):
                    if want == 0:
                        bracket = (q_prev, q_next, g_prev, g_next)
                        break
                    want -= 1
                q_prev, g_prev = q_next, g_next
        if bracket is not None:
            break
        lo = max(q_floor, lo - 1.5 ** j)
        hi = hi + 1.5 ** j
    if bracket is None:
        raise BracketError(
            f"no bracket for wall level n={n}, l={cfg.l} after "
            f"{max_expansions} expansions (searched q up to {hi:.3f}, "
            f"seed {q_seed:.3f})"
        )

    q_lo, q_hi, g_lo, g_hi = bracket
    for _ in range(max_bisections):
        e_lo, e_hi = _energy_of_q(cfg, q_lo), _energy_of_q(cfg, q_hi)
        tol = e_tol if e_tol is not None else 1e-12 * max(1.0, abs(e_hi))
        if e_hi - e_lo <= tol:
            return 0.5 * (e_lo + e_hi)
        q_mid = 0.5 * (q_lo + q_hi)
        g_mid = g(q_mid)
        if g_mid == 0.0:
            return _energy_of_q(cfg, q_mid)
        if (g_mid < 0.0) == (g_lo < 0.0):
            q_lo, g_lo = q_mid, g_mid
        else:
            q_hi, g_hi = q_mid, g_mid
    raise NumericsError(
        f"bisection did not reach tolerance in {max_bisections} steps "
        f"for wall level n={n}, l={cfg.l}"
    )
