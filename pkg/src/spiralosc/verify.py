"""Built-in verification suites behind the ``verify`` CLI command.

Five suites, each a list of independent checks:

  geometry           metric algebra and the derived Laplacian coefficients
  special-functions  1F1 identities, contiguous relation, asymptotics, Gamma
  spectrum-vs-oracle closed-form levels against the shooting solver
  hardwall           wall spectra: closed form vs exact roots vs oracle
  residual           discrete (H - E) psi residuals and their h^2 decay

Every check compares two independently computed quantities and records
the measured deviation next to its tolerance; nothing here prints (the
CLI renders results).  All randomness is drawn from one fixed seed so a
given build produces byte-identical reports.

perturb_energy is a fault-injection hook for the residual suite: it
shifts every analytic energy by the given amount before the residual is
formed, which a working build must detect as a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import NumericsError
from .geometry import DislocationParams, laplacian_coefficients, metric_at
from .hard_wall import HardWallConfig, approx_energy, boundary_value, exact_energy
from .kummer import HypergeomArgs, _series, gamma_fn, kummer_1f1, kummer_1f1_asymptotic
from .oscillator import QuantumNumbers, bound_state, energy_level, hamiltonian_residual
from .shooting import ShootingConfig, find_eigenvalue

__all__ = ["CheckResult", "SUITES", "run_suites"]

_SEED = 20260819

# shared parameter grid for the free-spectrum checks
_NS = (0, 1, 2, 3)
_LS = (0, 1, -1, 2, -2, 3)
_BETAS = (0.0, 0.3, 0.5, 1.0)
_KS = (0.0, 0.7)

# wall grid: r0 fixed, both defect strengths, lowest two |l|
_WALL_R0 = 2.5
_WALL_BETAS = (0.0, 0.5)
_WALL_LS = (0, 1)
_WALL_N_MAX = 15

# residual states: (n, l, beta, k) spanning n <= 2, |l| <= 2, both betas
_RESIDUAL_STATES = (
    (0, 0, 0.3, 0.0),
    (1, 1, 0.3, 0.0),
    (2, 2, 0.3, 0.0),
    (0, 2, 0.8, 0.0),
    (1, 0, 0.8, 0.4),
    (2, -1, 0.8, 0.0),
)
_RESIDUAL_HS = (4e-3, 2e-3, 1e-3)
# absolute ceiling at the finest step: worst clean-build measurement is
# 1.0e-5 (state n=2, l=-1, beta=0.8), kept with ~20x headroom; an energy
# fault of 1e-2 overshoots it by ~50x because (H - E - d) psi = -d psi
# makes the residual ~ |d|
_RESIDUAL_BOUND = 2e-4


@dataclass(frozen=True)
class CheckResult:
    """One verification check: measured deviation vs allowed deviation."""

    suite: str
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


def _check(suite: str, name: str, measured: float, tolerance: float,
           detail: str = "") -> CheckResult:
    ok = bool(measured <= tolerance) and math.isfinite(measured)
    return CheckResult(suite=suite, name=name, passed=ok,
                       measured=float(measured), tolerance=float(tolerance),
                       detail=detail)


# ---------------------------------------------------------------- geometry

def _suite_geometry() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED)
    out = []
    suite = "geometry"

    worst_inv = 0.0
    worst_det = 0.0
    for _ in range(50):
        beta = float(rng.uniform(-2.0, 2.0))
        r = float(rng.uniform(0.05, 8.0))
        p = DislocationParams(beta=beta)
        mp_ = metric_at(p, r)
        worst_inv = max(worst_inv, float(np.max(np.abs(mp_.g @ mp_.g_inv - np.eye(3)))))
        worst_det = max(worst_det, abs(mp_.det_g - r * r) / (r * r))
    out.append(_check(suite, "metric inverse identity g.g^-1 = 1", worst_inv, 1e-12))
    out.append(_check(suite, "metric determinant equals r^2", worst_det, 1e-12))

    # independently derived closed forms for the Laplacian coefficients
    worst_cf = 0.0
    for _ in range(50):
        beta = float(rng.uniform(-2.0, 2.0))
        r = float(rng.uniform(0.05, 8.0))
        co = laplacian_coefficients(DislocationParams(beta=beta), r)
        ref = (
            1.0 + beta * beta / r ** 2,
            1.0 / r - beta * beta / r ** 3,
            -2.0 * beta / r ** 2,
            1.0 / r ** 2,
            beta / r ** 3,
        )
        got = (co.c_rr, co.c_r, co.c_rphi, co.c_phiphi, co.c_phi)
        scale = max(1.0, *(abs(v) for v in ref))
        worst_cf = max(worst_cf, max(abs(g - e) for g, e in zip(got, ref)) / scale)
    out.append(_check(suite, "derived Laplacian matches closed forms", worst_cf, 1e-12))

    co0 = laplacian_coefficients(DislocationParams(beta=0.0), 1.7)
    flat_dev = max(
        abs(co0.c_rr - 1.0), abs(co0.c_r - 1.0 / 1.7), abs(co0.c_rphi),
        abs(co0.c_phiphi - 1.0 / 1.7 ** 2), abs(co0.c_phi),
    )
    out.append(_check(suite, "flat limit is the polar Laplacian", flat_dev, 1e-15))
    return out


# -------------------------------------------------------- special functions

def _series_digits_lost(a: float, b: float, x: float) -> float:
    lam = 0.5 * b - a
    if lam <= 0.0 or x <= 0.0:
        return 0.0
    return 2.0 * math.sqrt(lam * x) / math.log(10.0)


def _suite_special() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED + 1)
    out = []
    suite = "special-functions"

    dev = max(abs(kummer_1f1(HypergeomArgs(a=a, b=b, x=0.0)) - 1.0)
              for a, b in ((0.4, 1.7), (-2.0, 3.0), (5.5, 0.5)))
    out.append(_check(suite, "1F1(a, b; 0) = 1", dev, 0.0))

    dev = max(
        abs(kummer_1f1(HypergeomArgs(a=a, b=a, x=x)) - math.exp(x)) / math.exp(x)
        for a in (1.0, 2.5) for x in (0.3, 1.0, 5.0, 20.0, 40.0)
    )
    out.append(_check(suite, "1F1(a, a; x) = exp(x)", dev, 1e-13))

    # the two terminating code paths accumulate identical terms in the
    # same order, so they must agree to the last bit
    dev = 0.0
    for n in range(31):
        for x in (0.3, 1.0, 4.0, 9.0):
            via_dispatch = kummer_1f1(HypergeomArgs(a=-float(n), b=2.0, x=x))
            via_series = _series(-float(n), 2.0, x)[0]
            dev = max(dev, abs(via_dispatch - via_series))
    out.append(_check(suite, "terminating sum equals raw series bit-for-bit",
                      dev, 0.0))

    # contiguous relation a F(a+1) = (x + 2a - b) F(a) + (b - a) F(a-1),
    # sampled where the plain series keeps ~13 digits (cancellation costs
    # ~2 sqrt(lam x)/ln 10 digits; the regime map lives in the kummer
    # module docstring)
    tested = 0
    worst = 0.0
    for _ in range(3000):
        if tested >= 200:
            break
        a = float(rng.uniform(-5.0, 5.0))
        b = float(rng.uniform(0.5, 8.0))
        x = float(rng.uniform(0.0, 20.0))
        if max(_series_digits_lost(ai, b, x) for ai in (a - 1.0, a, a + 1.0)) > 3.0:
            continue
        f_m = kummer_1f1(HypergeomArgs(a=a - 1.0, b=b, x=x))
        f_0 = kummer_1f1(HypergeomArgs(a=a, b=b, x=x))
        f_p = kummer_1f1(HypergeomArgs(a=a + 1.0, b=b, x=x))
        t1, t2, t3 = a * f_p, (x + 2.0 * a - b) * f_0, (b - a) * f_m
        scale = max(abs(t1), abs(t2), abs(t3))
        if scale < 1e-12:
            continue
        tested += 1
        worst = max(worst, abs(t1 - t2 - t3) / scale)
    ok_cov = tested >= 200
    res = _check(suite, "contiguous relation in a", worst, 1e-9,
                 detail=f"{tested} samples in the series-stable region")
    if not ok_cov:
        res = replace(res, passed=False, detail=res.detail + " (coverage short)")
    out.append(res)

    # growth regime: leading asymptotic against the convergent series at
    # points where the 1/x correction is inside the 1e-2 band
    worst = 0.0
    for a, b, x in ((0.75, 2.0, 40.0), (1.0, 1.5, 40.0), (1.5, 2.0, 50.0),
                    (0.3, 1.0, 60.0), (0.5, 1.2, 60.0)):
        args = HypergeomArgs(a=a, b=b, x=x)
        s = kummer_1f1(args)
        worst = max(worst, abs(kummer_1f1_asymptotic(args) - s) / abs(s))
    out.append(_check(suite, "series/asymptotic overlap window", worst, 1e-2))

    dev = max(abs(gamma_fn(1.0) - 1.0),
              abs(gamma_fn(0.5) - math.sqrt(math.pi)) / math.sqrt(math.pi))
    out.append(_check(suite, "Gamma at 1 and 1/2", dev, 1e-14))

    zs = [-169.5, -101.5, -42.3, -7.7, -3.5, -0.5, 0.5, 1.0, 2.0, 3.75,
          7.3, 10.0, 25.25, 51.5, 101.5, 150.1, 170.5]
    zs += [float(z) for z in rng.uniform(-50.0, 50.0, size=60)
           if abs(z - round(z)) > 1e-3]
    worst = 0.0
    for z in zs:
        worst = max(worst, abs(gamma_fn(z) - math.gamma(z)) / abs(math.gamma(z)))
    out.append(_check(suite, "Gamma vs libm over [-170, 170]", worst, 1e-12))

    worst = 0.0
    for z in rng.uniform(0.05, 80.0, size=50):
        z = float(z)
        worst = max(worst, abs(gamma_fn(z + 1.0) / (z * gamma_fn(z)) - 1.0))
    out.append(_check(suite, "Gamma recurrence z Gamma(z)", worst, 1e-12))
    return out


# ------------------------------------------------------- spectrum vs oracle

def _suite_spectrum() -> list[CheckResult]:
    out = []
    suite = "spectrum-vs-oracle"
    cfg = ShootingConfig()

    analytic: dict[tuple, float] = {}
    oracle: dict[tuple, float] = {}
    for beta in _BETAS:
        p = DislocationParams(beta=beta)
        for n in _NS:
            for l in _LS:
                for k in _KS:
                    key = (n, l, beta, k)
                    analytic[key] = energy_level(p, QuantumNumbers(n=n, l=l, k=k))
                    oracle[key] = find_eigenvalue(p, l, k, n, cfg)

    worst = max(
        abs(oracle[key] - analytic[key]) / max(1.0, abs(analytic[key]))
        for key in analytic
    )
    out.append(_check(suite, "free levels vs shooting solver", worst, 1e-4,
                      detail=f"{len(analytic)} states"))

    worst_a = 0.0
    worst_o = 0.0
    for beta in _BETAS:
        shift = -0.5 * beta * beta  # m = omega = 1 on this grid
        for n in _NS:
            for l in _LS:
                for k in _KS:
                    da = analytic[(n, l, beta, k)] - analytic[(n, l, 0.0, k)]
                    do = oracle[(n, l, beta, k)] - oracle[(n, l, 0.0, k)]
                    worst_a = max(worst_a, abs(da - shift))
                    worst_o = max(worst_o, abs(do - shift))
    out.append(_check(suite, "defect shift -m w^2 b^2/2 (closed form)",
                      worst_a, 1e-12))
    out.append(_check(suite, "defect shift -m w^2 b^2/2 (oracle)",
                      worst_o, 1e-4))

    worst_a = 0.0
    worst_o = 0.0
    for beta in _BETAS:
        for n in _NS:
            for k in _KS:
                for l in (1, 2):
                    worst_a = max(worst_a, abs(analytic[(n, l, beta, k)]
                                               - analytic[(n, -l, beta, k)]))
                    worst_o = max(worst_o, abs(oracle[(n, l, beta, k)]
                                               - oracle[(n, -l, beta, k)]))
    out.append(_check(suite, "levels even in l (closed form)", worst_a, 0.0))
    out.append(_check(suite, "levels even in l (oracle)", worst_o, 1e-6))

    worst = max(
        abs(analytic[(n, l, 0.0, k)] - (2.0 * n + abs(l) + 1.0 + 0.5 * k * k))
        for n in _NS for l in _LS for k in _KS
    )
    out.append(_check(suite, "flat spectrum recovered at beta = 0", worst, 0.0))

    worst = max(
        abs(oracle[(n, l, beta, 0.7)] - oracle[(n, l, beta, 0.0)] - 0.5 * 0.49)
        for n in _NS for l in _LS for beta in _BETAS
    )
    out.append(_check(suite, "axial momentum enters only as k^2/2m (oracle)",
                      worst, 1e-10))
    return out


# ----------------------------------------------------------------- hardwall

def _suite_hardwall() -> list[CheckResult]:
    out = []
    suite = "hardwall"

    exact: dict[tuple, float] = {}
    approx: dict[tuple, float] = {}
    for beta in _WALL_BETAS:
        p = DislocationParams(beta=beta)
        for l in _WALL_LS:
            cfg = HardWallConfig(r0=_WALL_R0, params=p, l=l)
            for n in range(_WALL_N_MAX + 1):
                exact[(n, l, beta)] = exact_energy(cfg, n)
                approx[(n, l, beta)] = approx_energy(cfg, n)

    gaps = {
        key: abs(exact[key] - approx[key]) / abs(exact[key]) for key in exact
    }
    # the absolute gap E_exact - E_approx tends to a constant near 1.1
    # on this grid (checked against a 50-digit evaluation), so the
    # relative gap crosses 1e-2 cell by cell; the slowest cell
    # (beta = 0.5, l = 0) crosses between n = 11 and n = 12
    worst_tail = max(g for (n, l, beta), g in gaps.items() if n >= 12)
    out.append(_check(suite, "closed-form gap below 1e-2 from n = 12",
                      worst_tail, 1e-2))

    trend_ok = True
    for beta in _WALL_BETAS:
        for l in _WALL_LS:
            blocks = [
                float(np.mean([gaps[(n, l, beta)] for n in rng_]))
                for rng_ in (range(0, 5), range(5, 10), range(10, _WALL_N_MAX + 1))
            ]
            trend_ok = trend_ok and blocks[0] > blocks[1] > blocks[2]
    out.append(CheckResult(suite=suite, name="gap trends downward in n",
                           passed=trend_ok, measured=0.0 if trend_ok else 1.0,
                           tolerance=0.0, detail="block means over n"))

    cfg_shoot = ShootingConfig(wall_radius=_WALL_R0)
    worst = 0.0
    for beta in _WALL_BETAS:
        p = DislocationParams(beta=beta)
        for l in _WALL_LS:
            for n in range(_WALL_N_MAX + 1):
                e_o = find_eigenvalue(p, l, 0.0, n, cfg_shoot)
                e_x = exact[(n, l, beta)]
                worst = max(worst, abs(e_o - e_x) / max(1.0, abs(e_x)))
    out.append(_check(suite, "exact roots vs Dirichlet shooting solver",
                      worst, 1e-4, detail=f"{len(exact)} states"))

    # moving the defect into the radius: (r0, beta) vs (sqrt(r0^2+b^2), 0)
    worst_a = 0.0
    worst_x = 0.0
    beta = 0.5
    p = DislocationParams(beta=beta)
    p0 = DislocationParams(beta=0.0)
    shift = 0.5 * beta * beta  # m = omega = 1
    for l in _WALL_LS:
        cfg_b = HardWallConfig(r0=_WALL_R0, params=p, l=l)
        cfg_0 = HardWallConfig(r0=cfg_b.rho0, params=p0, l=l)
        for n in range(_WALL_N_MAX + 1):
            ea = approx_energy(cfg_b, n) + shift - approx_energy(cfg_0, n)
            ex = exact_energy(cfg_b, n) + shift - exact_energy(cfg_0, n)
            sc = max(1.0, abs(approx_energy(cfg_0, n)))
            worst_a = max(worst_a, abs(ea) / sc)
            worst_x = max(worst_x, abs(ex) / sc)
    out.append(_check(suite, "effective-radius collapse (closed form)",
                      worst_a, 1e-13))
    out.append(_check(suite, "effective-radius collapse (exact roots)",
                      worst_x, 1e-9))

    # boundary value vanishes at its own roots and flips sign between them
    cfg = HardWallConfig(r0=_WALL_R0, params=DislocationParams(beta=0.5), l=1)
    roots = [exact[(n, 1, 0.5)] for n in range(4)]
    scale = max(abs(boundary_value(cfg, 0.5 * (roots[0] + roots[1]))), 1e-30)
    worst = max(abs(boundary_value(cfg, e)) for e in roots) / scale
    signs = [boundary_value(cfg, 0.5 * (roots[i] + roots[i + 1])) for i in range(3)]
    alternates = all(signs[i] * signs[i + 1] < 0.0 for i in range(2))
    out.append(_check(suite, "boundary value vanishes at exact roots",
                      worst, 1e-8))
    out.append(CheckResult(suite=suite, name="boundary value alternates between roots",
                           passed=alternates, measured=0.0 if alternates else 1.0,
                           tolerance=0.0))
    return out


# ----------------------------------------------------------------- residual

def _suite_residual(perturb_energy: float = 0.0) -> list[CheckResult]:
    out = []
    suite = "residual"

    orders = []
    finest = []
    for n, l, beta, k in _RESIDUAL_STATES:
        st = bound_state(DislocationParams(beta=beta), QuantumNumbers(n=n, l=l, k=k))
        if perturb_energy != 0.0:
            st = replace(st, energy=st.energy + perturb_energy)
        res = [hamiltonian_residual(st, h=h) for h in _RESIDUAL_HS]
        finest.append(res[-1])
        logs_h = np.log(np.asarray(_RESIDUAL_HS))
        logs_r = np.log(np.asarray(res))
        slope = float(np.polyfit(logs_h, logs_r, 1)[0])
        orders.append(slope)

    worst_order = max(abs(o - 2.0) for o in orders)
    out.append(_check(suite, "residual decays as h^2 (order 2.0 +- 0.2)",
                      worst_order, 0.2,
                      detail="orders " + ", ".join(f"{o:.3f}" for o in orders)))
    out.append(_check(suite, "residual magnitude at h = 1e-3",
                      max(finest), _RESIDUAL_BOUND))
    return out


SUITES = {
    "geometry": _suite_geometry,
    "special-functions": _suite_special,
    "spectrum-vs-oracle": _suite_spectrum,
    "hardwall": _suite_hardwall,
    "residual": _suite_residual,
}


def run_suites(names: list[str] | None = None,
               perturb_energy: float = 0.0) -> list[CheckResult]:
    """Run the named suites (all five by default) and collect results."""
    selected = list(SUITES) if names is None else list(names)
    results: list[CheckResult] = []
    for name in selected:
        if name not in SUITES:
            raise NumericsError(
                f"unknown suite {name!r}; available: {', '.join(SUITES)}"
            )
        if name == "residual":
            results.extend(_suite_residual(perturb_energy))
        else:
            results.extend(SUITES[name]())
    return results
