"""Closed-form and exact wall spectra, boundary values, root indexing."""

import math

import numpy as np
import pytest
from scipy.special import jn_zeros

from spiralosc.errors import DomainError, NumericsError
from spiralosc.geometry import DislocationParams
from spiralosc.hard_wall import (
    HardWallConfig,
    approx_energy,
    boundary_value,
    exact_energy,
)
from spiralosc.kummer import HypergeomArgs, kummer_1f1, kummer_1f1_cosine
from spiralosc.oscillator import (
    QuantumNumbers,
    bound_state,
    energy_level,
    lambda_of_energy,
    radial_f,
)
from spiralosc.shooting import ShootingConfig, find_eigenvalue

import oracles


def _flat_cfg(r0, l=0, omega=1.0, k=0.0):
    return HardWallConfig(r0=r0, params=DislocationParams(beta=0.0, omega=omega),
                          l=l, k=k)


# ---------------------------------------------------------- closed form


def test_closed_form_ground_level():
    e = approx_energy(_flat_cfg(2.0), 0)
    assert e == pytest.approx(9.0 * math.pi ** 2 / 128.0, rel=1e-15)
    assert e == pytest.approx(0.69394, abs=1e-4)


def test_untrapped_wall_ratio_is_pure_effective_radius():
    p_def = DislocationParams(beta=0.5, omega=0.0)
    p_flat = DislocationParams(beta=0.0, omega=0.0)
    for n, l in ((0, 0), (3, 2)):
        e_def = approx_energy(HardWallConfig(r0=2.0, params=p_def, l=l), n)
        e_flat = approx_energy(HardWallConfig(r0=2.0, params=p_flat, l=l), n)
        assert e_def / e_flat == pytest.approx(4.0 / 4.25, rel=1e-14)


def test_untrapped_closed_form_approaches_bessel_levels():
    p = DislocationParams(beta=0.0, omega=0.0)
    cfg = HardWallConfig(r0=1.0, params=p)
    rels = []
    for n in (10, 20, 40):
        want = jn_zeros(0, n + 1)[-1] ** 2 / 2.0
        rels.append(abs(approx_energy(cfg, n) - want) / want)
    assert rels[0] > rels[1] > rels[2]
    assert rels[2] < 1e-4


def test_closed_form_rederives_from_cosine_zeros(rng):
    # putting the (n+1)-th zero of the oscillatory factor through the
    # spectral-parameter definitions must land exactly on approx_energy
    for _ in range(25):
        m = rng.uniform(0.3, 3.0)
        w = rng.uniform(0.1, 2.0)
        beta = rng.uniform(-1.0, 1.0)
        r0 = rng.uniform(0.5, 4.0)
        l = int(rng.integers(-3, 4))
        k = rng.uniform(-1.0, 1.0)
        n = int(rng.integers(0, 12))
        cfg = HardWallConfig(r0=r0, params=DislocationParams(beta=beta, mass=m,
                                                             omega=w), l=l, k=k)
        b = abs(l) + 1.0
        q = n * math.pi + abs(l) * math.pi / 2.0 + 0.75 * math.pi
        lam = q * q / (4.0 * cfg.x0)
        assert abs(kummer_1f1_cosine(0.5 * b - lam, b, cfg.x0)) < 1e-10
        e = 2.0 * w * lam - 0.5 * m * w * w * beta * beta + k * k / (2.0 * m)
        assert e == pytest.approx(approx_energy(cfg, n), rel=1e-12)


def test_config_validation():
    p = DislocationParams(beta=0.0)
    with pytest.raises(DomainError):
        HardWallConfig(r0=0.0, params=p)
    with pytest.raises(DomainError):
        HardWallConfig(r0=-1.0, params=p)
    with pytest.raises(DomainError):
        HardWallConfig(r0=1.0, params=p, k=math.nan)
    with pytest.raises(DomainError):
        approx_energy(_flat_cfg(1.0), -1)
    cfg = HardWallConfig(r0=3.0, params=DislocationParams(beta=4.0))
    assert cfg.rho0 == 5.0
    assert cfg.x0 == 25.0


# ------------------------------------------------------------ exact roots


def test_small_trap_limit_is_dirichlet_disk():
    cfg = HardWallConfig(r0=1.0, params=DislocationParams(beta=0.0, omega=1e-3))
    e = exact_energy(cfg, 0)
    assert e == pytest.approx(oracles.DISK_GROUND, abs=1e-3)
    assert e == pytest.approx(oracles.DISK_GROUND, abs=1e-5)


def test_gap_to_closed_form_shrinks_monotonically():
    # r0 = 2.5: the relative gap decreases strictly; it reaches 1e-2
    # between n = 10 (1.15e-2) and n = 11 (9.6e-3)
    cfg = _flat_cfg(2.5)
    gaps = []
    for n in range(16):
        ex = exact_energy(cfg, n)
        gaps.append((ex - approx_energy(cfg, n)) / ex)
    assert all(g > 0 for g in gaps)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[10] > 9e-3
    assert gaps[11] < 1e-2


def test_exact_energy_is_continuous_in_beta():
    ref = exact_energy(_flat_cfg(2.0, l=1), 1)
    close = exact_energy(HardWallConfig(
        r0=2.0, params=DislocationParams(beta=1e-4), l=1), 1)
    near = exact_energy(HardWallConfig(
        r0=2.0, params=DislocationParams(beta=1e-2), l=1), 1)
    assert abs(close - ref) < abs(near - ref)
    assert close == pytest.approx(ref, abs=1e-6)


def test_exact_energy_effective_radius_mapping():
    beta = 0.6
    cfg_def = HardWallConfig(r0=1.7, params=DislocationParams(beta=beta),
                             l=1, k=0.4)
    cfg_flat = HardWallConfig(r0=math.hypot(1.7, beta),
                              params=DislocationParams(beta=0.0), l=1, k=0.4)
    for n in (0, 2, 5):
        mapped = exact_energy(cfg_flat, n) - 0.5 * beta * beta
        assert exact_energy(cfg_def, n) == pytest.approx(mapped, rel=1e-9)


def test_wall_spectra_depend_on_abs_l_only():
    for n in (0, 3):
        cfg_p = HardWallConfig(r0=1.5, params=DislocationParams(beta=0.4), l=2)
        cfg_m = HardWallConfig(r0=1.5, params=DislocationParams(beta=0.4), l=-2)
        assert exact_energy(cfg_p, n) == exact_energy(cfg_m, n)
        assert approx_energy(cfg_p, n) == approx_energy(cfg_m, n)


def test_exact_energies_strictly_increase():
    cfg = HardWallConfig(r0=2.0, params=DislocationParams(beta=0.5), l=1)
    es = [exact_energy(cfg, n) for n in range(9)]
    assert all(b > a for a, b in zip(es, es[1:]))


def test_root_index_counts_profile_zeros():
    # n-th root = n zeros of the profile in the full variable x in (0, x0).
    # At beta = 0 that coincides with radial nodes in r; at beta != 0 deep
    # states park zeros below x = m w beta^2, where no real radius exists,
    # so the r-space count can trail the index (cf. the branch notes in
    # the shooting module).
    cfg = HardWallConfig(r0=2.0, params=DislocationParams(beta=0.5), l=1)
    for n in (0, 2, 4):
        lam = lambda_of_energy(cfg.params, cfg.k, exact_energy(cfg, n))
        a = 0.5 * (abs(cfg.l) + 1.0) - lam
        xs = np.linspace(1e-6, cfg.x0 * (1.0 - 1e-9), 4000)
        vals = [kummer_1f1(HypergeomArgs(a, 2.0, float(x))) for x in xs]
        assert int(np.sum(np.diff(np.sign(vals)) != 0)) == n

    flat = _flat_cfg(2.0, l=1)
    for n in (0, 2, 4):
        lam = lambda_of_energy(flat.params, flat.k, exact_energy(flat, n))
        a = 0.5 * (abs(flat.l) + 1.0) - lam
        rs = np.linspace(1e-3, 2.0 * 0.9995, 4000)
        vals = [kummer_1f1(HypergeomArgs(a, 2.0, float(r * r))) for r in rs]
        assert int(np.sum(np.diff(np.sign(vals)) != 0)) == n


def test_exact_energy_against_shooting_oracle():
    cfg = HardWallConfig(r0=2.0, params=DislocationParams(beta=0.5), l=1)
    e_root = exact_energy(cfg, 2)
    e_shot = find_eigenvalue(cfg.params, cfg.l, cfg.k, 2,
                             ShootingConfig(wall_radius=2.0))
    assert e_root == pytest.approx(e_shot, abs=1e-6)


def test_exact_energy_domain_errors():
    with pytest.raises(DomainError):
        exact_energy(HardWallConfig(r0=1.0,
                                    params=DislocationParams(beta=0.0, omega=0.0)), 0)
    with pytest.raises(DomainError):
        exact_energy(_flat_cfg(1.0), -2)


def test_unresolvable_band_raises_numerics_error():
    # x0 = 64 pushes the root past where any double-precision evaluator
    # holds: series cancellation on one side, recurrence growth on the
    # other; the failure must be loud, not a quiet wrong root
    with pytest.raises(NumericsError):
        exact_energy(_flat_cfg(8.0), 20)


# -------------------------------------------------------- boundary value


def test_boundary_value_vanishes_at_roots():
    cfg = _flat_cfg(2.5)
    for n in (0, 3, 7):
        e = exact_energy(cfg, n)
        d = 0.1 * (exact_energy(cfg, n + 1) - e)
        scale = max(abs(boundary_value(cfg, e - d)), abs(boundary_value(cfg, e + d)))
        assert abs(boundary_value(cfg, e)) <= 1e-10 * scale


def test_boundary_value_alternates_between_roots():
    cfg = _flat_cfg(2.5)
    es = [exact_energy(cfg, n) for n in range(5)]
    mids = [boundary_value(cfg, 0.5 * (a + b)) for a, b in zip(es, es[1:])]
    signs = [math.copysign(1.0, v) for v in mids]
    assert signs == [-1.0, 1.0, -1.0, 1.0]


def test_boundary_value_tiny_at_distant_wall():
    # a wall far outside the classical region barely touches a trapped
    # state: the boundary value is the analytic tail of the profile
    p = DislocationParams(beta=0.3)
    r0 = math.sqrt(30.0 - 0.09)
    cfg = HardWallConfig(r0=r0, params=p, l=0)
    tail = math.exp(-0.5 * cfg.x0)
    for n in (0, 1, 2):
        st = bound_state(p, QuantumNumbers(n, 0))
        bv = boundary_value(cfg, st.energy)
        assert bv == radial_f(st, r0)
        assert abs(bv) <= 1000.0 * tail
    assert boundary_value(cfg, energy_level(p, QuantumNumbers(0, 0))) == \
        pytest.approx(tail, rel=1e-12)


def test_boundary_value_matches_reference_profile(rng):
    # generic (non-root) energies across dispatch regimes vs 50-digit
    # evaluation of the same expression
    for r0, e in ((1.2, 3.7), (2.0, 11.3), (4.0, 2.2)):
        cfg = HardWallConfig(r0=r0, params=DislocationParams(beta=0.4), l=1)
        lam = lambda_of_energy(cfg.params, 0.0, e)
        want = oracles.radial_profile_ref(1.0, 1.0, 0.4, 1, lam, r0)
        assert boundary_value(cfg, e) == pytest.approx(want, rel=1e-9, abs=1e-300)


def test_boundary_value_needs_trap():
    with pytest.raises(DomainError):
        boundary_value(HardWallConfig(
            r0=1.0, params=DislocationParams(beta=0.0, omega=0.0)), 1.0)
