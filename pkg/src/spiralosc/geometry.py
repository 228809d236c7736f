"""Curved-space kinematics of a spiral dislocation.

An elastic medium carrying a spiral dislocation is described, in units
hbar = c = 1, by the line element

    ds^2 = dr^2 + 2 beta dr dphi + (beta^2 + r^2) dphi^2 + dz^2,

where beta (a length) measures the strength of the defect and beta = 0
is flat space.  Everything downstream, from the radial equation to the
spectra, is driven by this metric through the scalar Laplacian

    lap = g^{-1/2} d_i (g^{ij} g^{1/2} d_j).

The Laplacian coefficients are not transcribed by hand: they are derived
once, symbolically, from the metric and cached as fast numeric callables.
That keeps a single source of truth (the metric components) and lets the
tests check the derived coefficients against independent finite
differences of the flux form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = [
    "DislocationParams",
    "MetricAtPoint",
    "LaplacianCoefficients",
    "metric_at",
    "laplacian_coefficients",
]


@dataclass(frozen=True)
class DislocationParams:
    """Defect strength and oscillator parameters (hbar = c = 1).

    beta  : dislocation parameter; 0 switches the defect off.
    mass  : particle mass, > 0.
    omega : trap frequency, >= 0; 0 means no trap (hard-wall-only runs).
    """

    beta: float
    mass: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta!r}")
        if not math.isfinite(self.mass) or self.mass <= 0.0:
            raise DomainError(f"mass must be > 0, got {self.mass!r}")
        if not math.isfinite(self.omega) or self.omega < 0.0:
            raise DomainError(f"omega must be >= 0, got {self.omega!r}")


@dataclass(frozen=True)
class MetricAtPoint:
    """Metric tensor at one radius, in (r, phi, z) coordinate order."""

    g: np.ndarray
    g_inv: np.ndarray
    det_g: float


@dataclass(frozen=True)
class LaplacianCoefficients:
    """Coefficients of the scalar Laplacian on functions of (r, phi, z).

    lap F = c_rr F_rr + c_r F_r + c_rphi F_rphi + c_phiphi F_phiphi
            + c_phi F_phi + F_zz

    The z term always carries coefficient 1.  Fields hold floats for a
    scalar radius and arrays when the radius is an array.
    """

    c_rr: float | np.ndarray
    c_r: float | np.ndarray
    c_rphi: float | np.ndarray
    c_phiphi: float | np.ndarray
    c_phi: float | np.ndarray


@lru_cache(maxsize=1)
def _assembled():
    """Derive inverse, determinant and Laplacian coefficients from the metric.

    Runs once per process; the results are lambdified to plain numpy
    callables of (beta, r).
    """
    import sympy as sp

    beta = sp.Symbol("beta", real=True)
    r = sp.Symbol("r", positive=True)
    phi = sp.Symbol("phi", real=True)
    z = sp.Symbol("z", real=True)

    g = sp.Matrix([
        [1,    beta,            0],
        [beta, beta**2 + r**2,  0],
        [0,    0,               1],
    ])
    det = sp.factor(g.det())          # simplifies to r**2
    g_inv = sp.simplify(g.inv())
    sqrt_g = sp.sqrt(det)             # r, since r > 0

    F = sp.Function("F")(r, phi, z)
    coords = (r, phi, z)
    lap = sp.S.Zero
    for i in range(3):
        flux = sum(g_inv[i, j] * sqrt_g * sp.diff(F, coords[j]) for j in range(3))
        lap += sp.diff(flux, coords[i]) / sqrt_g
    lap = sp.expand(sp.simplify(sp.expand(lap)))

    # Pick the coefficient of each derivative atom by its (variable, order)
    # signature; the z second derivative must come out as exactly 1.
    by_sig = {}
    for d in lap.atoms(sp.Derivative):
        sig = tuple(sorted((str(v), int(c)) for v, c in d.variable_count))
        by_sig[sig] = sp.simplify(lap.coeff(d))
    assert by_sig[(("z", 2),)] == 1

    def fn(expr):
        return sp.lambdify((beta, r), expr, modules="numpy")

    return {
        "det": fn(det),
        "g_inv": tuple(tuple(fn(g_inv[i, j]) for j in range(3)) for i in range(3)),
        "c_rr": fn(by_sig[(("r", 2),)]),
        "c_r": fn(by_sig[(("r", 1),)]),
        "c_rphi": fn(by_sig[(("phi", 1), ("r", 1))]),
        "c_phiphi": fn(by_sig[(("phi", 2),)]),
        "c_phi": fn(by_sig[(("phi", 1),)]),
    }


def metric_at(params: DislocationParams, r: float) -> MetricAtPoint:
    """Metric tensor, its inverse and determinant at radius r > 0."""
    if not (np.isfinite(r) and r > 0.0):
        raise DomainError(f"radius must be > 0, got {r!r}")
    pieces = _assembled()
    b = params.beta
    g = np.array([
        [1.0, b,            0.0],
        [b,   b * b + r * r, 0.0],
        [0.0, 0.0,          1.0],
    ])
    g_inv = np.array(
        [[float(pieces["g_inv"][i][j](b, r)) for j in range(3)] for i in range(3)]
    )
    return MetricAtPoint(g=g, g_inv=g_inv, det_g=float(pieces["det"](b, r)))


def laplacian_coefficients(params: DislocationParams,
                           r: float | np.ndarray) -> LaplacianCoefficients:
    """Scalar-Laplacian coefficients at radius r (scalar or array, all > 0)."""
    r_arr = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(r_arr)) or np.any(r_arr <= 0.0):
        raise DomainError("radius must be finite and > 0")
    pieces = _assembled()
    b = params.beta

    def at(key):
        val = pieces[key](b, r_arr)
        # lambdify returns bare scalars for constant expressions
        val = np.broadcast_to(np.asarray(val, dtype=float), r_arr.shape)
        return float(val) if np.isscalar(r) or r_arr.ndim == 0 else val.copy()

    return LaplacianCoefficients(
        c_rr=at("c_rr"),
        c_r=at("c_r"),
        c_rphi=at("c_rphi"),
        c_phiphi=at("c_phiphi"),
        c_phi=at("c_phi"),
    )
