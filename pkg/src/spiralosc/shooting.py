"""Independent eigenvalue solver: RK4 shooting on the radial equation.

This module never touches the closed-form spectrum.  It integrates the
radial profile equation

    (1 + beta^2/r^2) f'' + (1/r - beta^2/r^3) f'
        - l^2/(r^2 + beta^2) f - (m w r)^2 f + (2 m E - k^2) f = 0

outward as a first-order system with classical RK4 and finds eigenvalues
by node-count bracketing plus terminal-value bisection.  The closed
forms elsewhere in the package are tested against these numbers, so
nothing here may import from the analytic modules.

The free-particle direction enters only through the combination
c = 2 m E - k^2; the search runs directly on c, which makes the exact
k-shift E(k) = E(0) + k^2 / 2m structural rather than numerical.

Branch selection at the core needs care when beta != 0.  In the
variable t = r^2 + beta^2 the profile equation collapses to

    t h'' + h' + [C - l^2/(4 t) - mu t / 4] h = 0,
    C = (c + mu beta^2) / 4,   mu = (m w)^2,

whose only singular point is t = 0, i.e. the unphysical radius
r = i beta.  The physical axis starts at t = beta^2, an ordinary point,
where both fundamental solutions are finite even functions of r with
f'(0) = 0; local initial data at small r therefore cannot distinguish
them.  The physical profile is the branch h = t^(|l|/2) u(t) with u
analytic at t = 0, u(0) = 1, fixed by the series recurrence

    u_j = [(mu / 4) u_(j-2) - C u_(j-1)] / (j (j + |l|)),

which follows from the ODE alone.  That series supplies f and f' at
r_min.  At large c the series branch already oscillates below r_min, so
eigenvalue labels count its sign changes on (0, r_min] together with
the sign changes seen by the integrator: the total is the zero count of
the full branch, which is what orders the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import BracketError, DomainError, NumericsError
from .geometry import DislocationParams

__all__ = ["ShootingConfig", "ShotResult", "shoot", "find_eigenvalue"]

_RESCALE_AT = 1e100   # growth cap; positive rescale preserves signs and nodes


@dataclass(frozen=True)
class ShootingConfig:
    """Grid and tolerance knobs for the shooting integrator.

    r_max = None sizes the domain automatically: 1.5x the classical
    turning radius plus five natural lengths 1/sqrt(m w).  wall_radius
    switches to hard-wall mode: integrate exactly to the wall and treat
    f(wall) = 0 as the terminal condition.  h is a target step; the grid
    is snapped so a whole number of steps lands on the terminal radius
    (wall-mode accuracy would otherwise be limited by half a step of
    wall-position error).
    """

    r_min: float = 1e-6
    r_max: float | None = None
    h: float = 1e-3
    e_tol: float = 1e-10
    max_bisections: int = 200
    wall_radius: float | None = None

    def __post_init__(self):
        if self.r_min <= 0.0 or not math.isfinite(self.r_min):
            raise DomainError(f"r_min must be > 0, got {self.r_min!r}")
        if self.h <= 0.0 or not math.isfinite(self.h):
            raise DomainError(f"h must be > 0, got {self.h!r}")
        if self.e_tol <= 0.0:
            raise DomainError(f"e_tol must be > 0, got {self.e_tol!r}")
        if self.max_bisections < 1:
            raise DomainError("max_bisections must be >= 1")
        for name in ("r_max", "wall_radius"):
            v = getattr(self, name)
            if v is not None and (v <= self.r_min or not math.isfinite(v)):
                raise DomainError(f"{name} must exceed r_min, got {v!r}")
            if v is not None and self.h > (v - self.r_min) / 100.0:
                raise DomainError(
                    f"h={self.h!r} too coarse for the span to {name}={v!r}; "
                    "need at least 100 steps"
                )


@dataclass(frozen=True)
class ShotResult:
    """One outward integration: terminal f, sign changes seen, peak |f|."""

    terminal: float
    nodes: int
    max_abs: float


@njit(cache=True)
def _integrate(beta2, m2w2, l2, c, r_min, h, n_steps, f0, df0):
    u = f0
    v = df0
    prev = u
    nodes = 0
    max_abs = abs(u)
    r = r_min
    for _ in range(n_steps):
        a1 = 1.0 + beta2 / (r * r)
        b1 = 1.0 / r - beta2 / (r * r * r)
        c1 = l2 / (r * r + beta2) + m2w2 * r * r - c
        k1u = v
        k1v = (-b1 * v + c1 * u) / a1

        rm = r + 0.5 * h
        a2 = 1.0 + beta2 / (rm * rm)
        b2 = 1.0 / rm - beta2 / (rm * rm * rm)
        c2 = l2 / (rm * rm + beta2) + m2w2 * rm * rm - c
        u2 = u + 0.5 * h * k1u
        v2 = v + 0.5 * h * k1v
        k2u = v2
        k2v = (-b2 * v2 + c2 * u2) / a2

        u3 = u + 0.5 * h * k2u
        v3 = v + 0.5 * h * k2v
        k3u = v3
        k3v = (-b2 * v3 + c2 * u3) / a2

        rp = r + h
        a4 = 1.0 + beta2 / (rp * rp)
        b4 = 1.0 / rp - beta2 / (rp * rp * rp)
        c4 = l2 / (rp * rp + beta2) + m2w2 * rp * rp - c
        u4 = u + h * k3u
        v4 = v + h * k3v
        k4u = v4
        k4v = (-b4 * v4 + c4 * u4) / a4

        u = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        r = rp

        if u == 0.0 or (u > 0.0) != (prev > 0.0):
            nodes += 1
        prev = u
        au = abs(u)
        if au > max_abs:
            max_abs = au
        if au > _RESCALE_AT:
            u *= 1e-100
            v *= 1e-100
            prev *= 1e-100
    return u, nodes, max_abs


def _core_coeffs(labs: int, c4: float, mu4: float, t_max: float) -> np.ndarray:
    """Taylor coefficients of the core-regular factor u(t) on [0, t_max].

    u solves t u'' + (|l| + 1) u' + (c4 - mu4 t) u = 0 with u(0) = 1; the
    physical profile is t^(|l|/2) u(t).  Truncated where the remaining
    terms are below roundoff at t_max.  Like any alternating series this
    cancels roughly 2 sqrt(c4 t_max) / ln 10 digits, which is harmless
    for the parameter ranges the oracle is asked to certify.
    """
    coeffs = [1.0]
    max_term = 1.0
    quiet = 0
    for j in range(1, 400):
        prev1 = coeffs[j - 1]
        prev2 = coeffs[j - 2] if j >= 2 else 0.0
        cj = (mu4 * prev2 - c4 * prev1) / (j * (j + labs))
        coeffs.append(cj)
        term = abs(cj) * t_max ** j
        max_term = max(max_term, term)
        quiet = quiet + 1 if term < 1e-18 * max_term else 0
        if quiet >= 4:
            break
    return np.asarray(coeffs)


def _core_zero_count(labs: int, c4: float, mu4: float, t_min: float) -> int:
    """Sign changes of the branch profile on the unreachable strip (0, t_min].

    Zero when c4 <= 0 (all series terms positive) or when the first
    oscillation sits beyond t_min; otherwise counted on a grid uniform
    in sqrt(t), which matches the local zero spacing.
    """
    if c4 <= 0.0 or 4.0 * c4 * t_min < 5.0:
        return 0
    coeffs = _core_coeffs(labs, c4, mu4, t_min)
    n_pts = 256 + int(8.0 * math.sqrt(c4 * t_min))
    ts = (np.arange(1, n_pts + 1) / n_pts) ** 2 * t_min
    vals = np.polynomial.polynomial.polyval(ts, coeffs)
    signs = np.sign(vals)
    return int(np.count_nonzero(np.diff(signs[signs != 0.0])))


def _core_initial_data(params: DislocationParams, labs: int, c: float,
                       r_min: float) -> tuple[float, float]:
    """(f, f') of the physical branch at r_min, normalised to unit scale."""
    beta2 = params.beta * params.beta
    mu = (params.mass * params.omega) ** 2
    t_min = r_min * r_min + beta2
    c4 = 0.25 * (c + mu * beta2)
    coeffs = _core_coeffs(labs, c4, 0.25 * mu, t_min)
    u = float(np.polynomial.polynomial.polyval(t_min, coeffs))
    du = float(np.polynomial.polynomial.polyval(t_min, np.polynomial.polynomial.polyder(coeffs)))
    s = 0.5 * labs
    f0 = t_min ** s * u
    h_t = t_min ** s * du
    if labs:
        h_t += s * t_min ** (s - 1.0) * u
    df0 = 2.0 * r_min * h_t
    scale = max(abs(f0), abs(df0))
    if scale == 0.0 or not math.isfinite(scale):
        raise NumericsError("core series produced unusable initial data")
    return f0 / scale, df0 / scale


def _domain_end(params: DislocationParams, energy: float, config: ShootingConfig) -> float:
    if config.wall_radius is not None:
        return config.wall_radius
    if config.r_max is not None:
        return config.r_max
    m, w = params.mass, params.omega
    if w == 0.0:
        raise DomainError("free states need a trap: set omega > 0 or a wall_radius")
    r_turn = math.sqrt(2.0 * max(energy, w) / (m * w * w))
    return 1.5 * r_turn + 5.0 / math.sqrt(m * w)


def _shoot_c(params: DislocationParams, l: int, c: float, r_end: float,
             config: ShootingConfig) -> ShotResult:
    beta2 = params.beta * params.beta
    m2w2 = (params.mass * params.omega) ** 2
    l2 = float(l * l)
    f0, df0 = _core_initial_data(params, abs(l), c, config.r_min)
    span = r_end - config.r_min
    if span <= 0.0:
        raise DomainError("terminal radius must exceed r_min")
    if config.h > span / 100.0:
        raise DomainError(
            f"h={config.h!r} too coarse for span {span!r}; need at least 100 steps"
        )
    n_steps = max(1, round(span / config.h))
    h_eff = span / n_steps   # snap: land exactly on r_end
    term, nodes, max_abs = _integrate(
        beta2, m2w2, l2, c, config.r_min, h_eff, n_steps, f0, df0
    )
    return ShotResult(terminal=float(term), nodes=int(nodes), max_abs=float(max_abs))


def shoot(params: DislocationParams, l: int, k: float, energy: float,
          config: ShootingConfig | None = None) -> ShotResult:
    """Integrate the radial equation outward at the given energy.

    Initial data at r_min come from the core-regular series branch (see
    the module docstring); at beta = 0 this reduces to the flat-space
    behaviour f ~ r^|l|.  The reported node count is the number of sign
    changes seen by the integrator on (r_min, terminal]; sign changes of
    the branch below r_min are not included.  The solution is rescaled
    whenever |f| exceeds 1e100, which preserves signs, node count and
    the terminal sign.
    """
    cfg = config or ShootingConfig()
    c = 2.0 * params.mass * energy - k * k
    r_end = _domain_end(params, energy, cfg)
    return _shoot_c(params, l, c, r_end, cfg)


def find_eigenvalue(params: DislocationParams, l: int, k: float, n: int,
                    config: ShootingConfig | None = None) -> float:
    """Energy of the state with n radial nodes, by shooting.

    Brackets c = 2 m E - k^2 by node count (solutions with n and n + 1
    sign changes), then bisects on the sign of the terminal value until
    the bracket is below e_tol * max(1, |E|).  Hard-wall mode (terminal
    condition f(wall_radius) = 0) is selected by config.wall_radius and
    is the only mode that supports omega = 0.
    """
    cfg = config or ShootingConfig()
    if n < 0 or n != int(n):
        raise DomainError(f"node count must be a non-negative integer, got {n!r}")
    m, w, b = params.mass, params.omega, params.beta
    if w == 0.0 and cfg.wall_radius is None:
        raise DomainError("omega = 0 has no bound states without a wall_radius")
    labs = abs(l)

    # Sweep window for c = 2 m E - k^2 (k-free by construction).  The
    # floor sits below every level; the ceiling is expanded on demand.
    mwb2 = (m * w * b) ** 2
    c_lo = -2.0 * mwb2
    c_hi = 2.0 * m * w * (2.0 * n + labs + 3.0) + 2.0 * mwb2
    if cfg.wall_radius is not None:
        q = (n + 1.0) * math.pi + 0.5 * labs * math.pi + 0.75 * math.pi
        c_hi += q * q / (cfg.wall_radius ** 2 + b * b)

    # One fixed grid for the whole search so terminal values at different
    # energies are comparable; size it from the sweep ceiling.
    r_end = _domain_end(params, c_hi / (2.0 * m), cfg)

    def result(c: float) -> ShotResult:
        return _shoot_c(params, l, c, r_end, cfg)

    def nodes(c: float) -> int:
        # label by the zero count of the full branch: the strip below
        # r_min plus the integrator's window
        core = _core_zero_count(labs, 0.25 * (c + mwb2), 0.25 * (m * w) ** 2,
                                cfg.r_min ** 2 + b * b)
        return core + result(c).nodes

    span0 = max(c_hi - c_lo, 1.0)
    for _ in range(40):
        if nodes(c_lo) <= n:
            break
        c_lo -= span0
        span0 *= 1.6
    else:
        raise BracketError("node count never dropped to n at the sweep floor")
    span0 = max(c_hi - c_lo, 1.0)
    for _ in range(40):
        if nodes(c_hi) >= n + 1:
            break
        c_hi += span0
        span0 *= 1.6
    else:
        raise BracketError("node count never reached n + 1 at the sweep ceiling")

    def tol_c(c_mid: float) -> float:
        return 2.0 * m * cfg.e_tol * max(1.0, abs(c_mid) / (2.0 * m))

    # Phase 1: shrink on node count until the bracket holds exactly the
    # n -> n+1 transition.
    lo, hi = c_lo, c_hi
    for _ in range(cfg.max_bisections):
        if nodes(lo) == n and nodes(hi) == n + 1:
            break
        if hi - lo < tol_c(0.5 * (lo + hi)):
            break
        mid = 0.5 * (lo + hi)
        if nodes(mid) <= n:
            lo = mid
        else:
            hi = mid
    else:
        raise NumericsError("node-count bracketing exceeded max_bisections")

    # Phase 2: bisect on the terminal sign inside the bracket.
    t_lo = result(lo).terminal
    t_hi = result(hi).terminal
    steps = 0
    while hi - lo > tol_c(0.5 * (lo + hi)):
        steps += 1
        if steps > cfg.max_bisections:
            raise NumericsError("terminal-value bisection exceeded max_bisections")
        mid = 0.5 * (lo + hi)
        t_mid = result(mid).terminal
        if t_mid == 0.0:
            lo = hi = mid
            break
        if (t_lo > 0.0) != (t_hi > 0.0):
            if (t_mid > 0.0) == (t_lo > 0.0):
                lo, t_lo = mid, t_mid
            else:
                hi, t_hi = mid, t_mid
        else:
            # terminal signs agree (node landed on the endpoint); fall
            # back to node-count bisection, which is unambiguous
            if nodes(mid) <= n:
                lo, t_lo = mid, t_mid
            else:
                hi, t_hi = mid, t_mid

    c_star = 0.5 * (lo + hi)
    return (c_star + k * k) / (2.0 * m)
