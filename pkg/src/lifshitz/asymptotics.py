"""Closed-form low-frequency limits used to sanity-check the full integrals.

At large separations the force is dominated by low frequencies and small
wavevectors, where bulk amplitudes settle at (1-sqrt(eps0))/(1+sqrt(eps0))
for insulators and at -1 for conductors.  A dissipative conductor slab
additionally carries the thickness scale

    Lambda = 2 gamma c / omega_p^2

below which its static reflectivity drops to -1/(1 + Lambda/D).  Feeding a
constant amplitude r into the force integral gives the exact value

    eta = 90/pi^4 * Li4(r^2),

which is the long-distance estimate quoted for the catalog materials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT
from .dielectric import DielectricModel

__all__ = [
    "AsymptoticReport",
    "asymptotic_report",
    "characteristic_frequency",
    "effective_thickness",
    "eta_constant_reflectivity",
    "phase_factor_curves",
    "polylog4",
    "slab_static_reflection",
    "static_reflection",
]


def static_reflection(eps0: float) -> float:
    """Static interface amplitude (1 - sqrt(eps0)) / (1 + sqrt(eps0))."""
    if eps0 < 1.0:
        raise ValueError(f"static permittivity must be >= 1, got {eps0}")
    root = math.sqrt(eps0)
    return (1.0 - root) / (1.0 + root)


def effective_thickness(omega_p: float, gamma: float) -> float:
    """Thickness scale 2 gamma c / omega_p^2 of a dissipative conductor.

    Slabs thinner than this lose static reflectivity; the dissipationless
    (gamma = 0) limit has no such scale, its slab reflectivity is
    thickness-independent at low frequency.
    """
    if omega_p <= 0:
        raise ValueError("omega_p must be positive")
    if gamma <= 0:
        raise ValueError(
            "gamma must be positive: a dissipationless conductor has no "
            "effective thickness (slab reflectivity is thickness-independent)"
        )
    return 2.0 * gamma * C_LIGHT / omega_p**2


def slab_static_reflection(thickness: float, lam: float) -> float:
    """Low-frequency slab amplitude -1 / (1 + Lambda/D) of a conductor."""
    if thickness <= 0 or lam <= 0:
        raise ValueError("thickness and Lambda must be positive")
    return -1.0 / (1.0 + lam / thickness)


def polylog4(a: float) -> float:
    """Li4(a) for 0 <= a <= 1 by direct series, accurate to ~1e-12.

    The tail past N terms is below a^N/(3 N^3), so 10^4 terms cover the
    worst case a = 1 (where Li4(1) = pi^4/90).
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"series argument must be in [0, 1], got {a}")
    if a == 0.0:
        return 0.0
    n = np.arange(1, 10_001, dtype=float)
    return float(np.sum(a**n / n**4))


def eta_constant_reflectivity(r: float) -> float:
    """Exact reduction factor for frequency-independent amplitude r."""
    if abs(r) > 1.0:
        raise ValueError(f"|r| must be <= 1, got {r}")
    return 90.0 / math.pi**4 * polylog4(r * r)


def characteristic_frequency(separation: float) -> float:
    """Frequency scale c/L dominating the force at separation L (diagnostic)."""
    if separation <= 0:
        raise ValueError("separation must be positive")
    return C_LIGHT / separation


def phase_factor_curves(
    model: DielectricModel,
    thickness: float,
    kappa_ratio: float,
    omega_grid,
) -> np.ndarray:
    """Optical length delta(omega) of a slab along the ray c*kappa = ratio*omega.

    ``kappa_ratio`` >= 1 fixes the evaluation path (ratio 1 is the light
    cone k = 0).  Returns delta for every omega in the grid; conductors
    keep delta finite as omega -> 0 only in the dissipationless limit.
    """
    if thickness <= 0:
        raise ValueError("thickness must be positive")
    if kappa_ratio < 1.0:
        raise ValueError("kappa_ratio must be >= 1 (kappa >= omega/c)")
    w = np.asarray(omega_grid, dtype=float)
    if np.any(w <= 0):
        raise ValueError("omega grid must be positive")
    eps = model.epsilon(w)
    radicand = w * w * (eps - 1.0) + (kappa_ratio * w) ** 2
    return thickness / C_LIGHT * np.sqrt(radicand)


@dataclass(frozen=True)
class AsymptoticReport:
    """Long-distance summary of one mirror material (and slab thickness)."""

    label: str
    static_rho: float                 # bulk amplitude at omega, k -> 0
    lambda_eff: float | None          # conductor thickness scale, None otherwise
    slab_static_r: float | None       # slab amplitude at the given thickness
    eta_const_r: float                # constant-amplitude estimate of eta


def _combined_effective_thickness(model: DielectricModel) -> float:
    """Lambda for a model whose carriers may be split over several terms.

    The low-frequency conductivity scale is sum(omega_p_i^2/gamma_i); the
    single-carrier formula follows for one term.
    """
    sigma = 0.0
    for omega_p, gamma in model.drude_parameters():
        if gamma == 0.0:
            raise ValueError(
                "model has a dissipationless carrier term; no effective thickness"
            )
        sigma += omega_p**2 / gamma
    return 2.0 * C_LIGHT / sigma


def asymptotic_report(
    model: DielectricModel, thickness: float | None = None
) -> AsymptoticReport:
    """Assemble the long-distance estimates for a catalog model.

    Conductors reflect like perfect mirrors in the static limit, so their
    bulk amplitude is -1 and the slab amplitude follows the
    effective-thickness law.  Insulator slabs lose all reflectivity at
    long distance, so with a finite ``thickness`` their estimate is 0; the
    bulk estimate uses the static permittivity.
    """
    if model.diverges_at_zero:
        static_rho = -1.0
        try:
            lam = _combined_effective_thickness(model)
        except ValueError:
            lam = None
        if thickness is None:
            slab_r = None
            eta = eta_constant_reflectivity(static_rho)
        elif lam is None:
            slab_r = -1.0  # dissipationless carriers: thickness-independent
            eta = eta_constant_reflectivity(slab_r)
        else:
            slab_r = slab_static_reflection(thickness, lam)
            eta = eta_constant_reflectivity(slab_r)
        return AsymptoticReport(model.label, static_rho, lam, slab_r, eta)

    static_rho = static_reflection(model.static_value())
    if thickness is None:
        return AsymptoticReport(
            model.label, static_rho, None, None, eta_constant_reflectivity(static_rho)
        )
    # thin insulator slabs go transparent at long distance
    return AsymptoticReport(model.label, static_rho, None, 0.0, 0.0)
