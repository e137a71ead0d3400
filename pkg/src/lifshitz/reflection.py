"""Reflection amplitudes at imaginary frequencies for bulk, slab and layered mirrors.

On the imaginary axis every radicand below is positive, so all square roots
take the positive branch and the amplitudes are real with |r| <= 1.  The
longitudinal decay rate of a medium with permittivity eps is

    alpha = sqrt(omega^2 (eps - 1) + (c kappa)^2)        [rad/s]

with kappa = sqrt(k^2 + omega^2/c^2) >= omega/c the longitudinal imaginary
wavevector; vacuum has alpha = c kappa.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT
from .dielectric import DielectricModel

__all__ = [
    "Kinematics",
    "Mirror",
    "fresnel_bulk",
    "layered_reflection",
    "optical_length",
    "slab_reflection",
]

TE = "TE"
TM = "TM"
POLARIZATIONS = (TE, TM)


@dataclass(frozen=True)
class Kinematics:
    """One evaluation point on the imaginary axis: (omega, kappa, polarization)."""

    omega: float  # imaginary angular frequency, rad/s
    kappa: float  # longitudinal imaginary wavevector, rad/m
    pol: str

    def __post_init__(self):
        if self.pol not in POLARIZATIONS:
            raise ValueError(f"polarization must be one of {POLARIZATIONS}, got {self.pol!r}")
        if self.omega < 0:
            raise ValueError("omega must be >= 0")
        # kappa = sqrt(k^2 + omega^2/c^2) can never drop below omega/c;
        # allow a sliver of rounding from callers that compute kappa.
        if self.kappa * C_LIGHT < self.omega * (1.0 - 1e-12):
            raise ValueError("kappa must be >= omega/c")
        if self.omega == 0.0 and self.kappa == 0.0:
            raise ValueError("degenerate point omega = kappa = 0 is not supported")


def _alpha(eps, omega, ckappa):
    """Longitudinal decay rate (times c) inside a medium; positive branch."""
    return np.sqrt(omega * omega * (eps - 1.0) + ckappa * ckappa)


def _interface_te(alpha_front, alpha_back):
    return (alpha_front - alpha_back) / (alpha_front + alpha_back)


def _interface_tm(eps_front, alpha_front, eps_back, alpha_back):
    num = eps_front * alpha_back - eps_back * alpha_front
    return num / (eps_front * alpha_back + eps_back * alpha_front)


def _check_eps(eps) -> None:
    if np.any(np.asarray(eps) < 1.0):
        raise ValueError("permittivity on the imaginary axis must be >= 1")


def fresnel_bulk(eps: float, kin: Kinematics) -> float:
    """Vacuum/bulk interface amplitude for the given polarization.

    Both polarizations are real and bounded by 1 in magnitude; the common
    sign convention here makes both amplitudes tend to
    (1 - sqrt(eps))/(1 + sqrt(eps)) in the static limit.
    """
    _check_eps(eps)
    ck = kin.kappa * C_LIGHT
    a = _alpha(eps, kin.omega, ck)
    if kin.pol == TE:
        return float(_interface_te(ck, a))
    return float(_interface_tm(1.0, ck, eps, a))


def optical_length(eps: float, thickness: float, kin: Kinematics) -> float:
    """Decay exponent delta accumulated across a slab of the given thickness."""
    _check_eps(eps)
    if thickness <= 0:
        raise ValueError("thickness must be positive")
    ck = kin.kappa * C_LIGHT
    return float(thickness / C_LIGHT * _alpha(eps, kin.omega, ck))


def _slab_amplitude(rho, delta):
    """Two-interface (Airy) amplitude of a free-standing slab.

    Written as grow = -expm1(-2 delta) so both the numerator and the
    denominator are sums of non-negative pieces; no cancellation for thin
    slabs with near-unit interface reflectivity.
    """
    grow = -np.expm1(-2.0 * delta)
    num = rho * grow
    den = (1.0 - rho) * (1.0 + rho) + rho * rho * grow
    return num / den


def slab_reflection(eps: float, thickness: float, kin: Kinematics) -> float:
    """Reflection amplitude of a free-standing slab of the given thickness."""
    rho = fresnel_bulk(eps, kin)
    delta = optical_length(eps, thickness, kin)
    return float(_slab_amplitude(rho, delta))


@dataclass(frozen=True)
class Mirror:
    """Layer stack facing the cavity: layers front-to-back over a backing.

    ``layers`` holds (model, thickness in meters) pairs; ``backing`` is a
    bulk model or None for vacuum.  A bare bulk mirror is zero layers over
    a bulk backing; a free-standing stack is layers over vacuum.
    """

    layers: tuple = ()
    backing: DielectricModel | None = None

    def __post_init__(self):
        if not self.layers and self.backing is None:
            raise ValueError("a mirror needs at least one layer or a bulk backing")
        for model, thickness in self.layers:
            if thickness <= 0:
                raise ValueError(f"layer thickness must be positive, got {thickness}")
            if not isinstance(model, DielectricModel):
                raise TypeError("layer models must be DielectricModel instances")

    @classmethod
    def bulk(cls, model: DielectricModel) -> "Mirror":
        return cls(layers=(), backing=model)

    @classmethod
    def slab(cls, model: DielectricModel, thickness: float) -> "Mirror":
        return cls(layers=((model, thickness),), backing=None)

    @classmethod
    def coated(cls, film: DielectricModel, thickness: float, substrate: DielectricModel) -> "Mirror":
        return cls(layers=((film, thickness),), backing=substrate)

    def describe(self) -> str:
        parts = [f"{m.label or 'model'}@{t:g}m" for m, t in self.layers]
        if self.backing is not None:
            parts.append(f"{self.backing.label or 'model'}(bulk)")
        return "+".join(parts) if parts else "vacuum"

    def reflection_amplitudes(self, omega, kappa):
        """(r_TE, r_TM) for arrays of omega [rad/s] and kappa [rad/m].

        Vectorized over broadcastable inputs; each distinct layer model is
        evaluated once per call.
        """
        omega = np.asarray(omega, dtype=float)
        ckappa = np.asarray(kappa, dtype=float) * C_LIGHT
        omega, ckappa = np.broadcast_arrays(omega, ckappa)

        # Evaluate each distinct model once.
        eps_cache: dict[int, np.ndarray] = {}

        def eps_of(model):
            key = id(model)
            if key not in eps_cache:
                eps_cache[key] = np.asarray(model.epsilon(omega))
            return eps_cache[key]

        eps_layers = [eps_of(m) for m, _ in self.layers]
        alpha_layers = [_alpha(e, omega, ckappa) for e in eps_layers]

        def interfaces(eps_a, alpha_a, eps_b, alpha_b):
            return (
                _interface_te(alpha_a, alpha_b),
                _interface_tm(eps_a, alpha_a, eps_b, alpha_b),
            )

        # Amplitude seen from inside the last layer looking at the backing.
        if self.backing is None:
            if not self.layers:
                zero = np.zeros_like(omega)
                return zero, zero.copy()
            eps_back = np.ones_like(omega)
            alpha_back = ckappa
        else:
            eps_back = eps_of(self.backing)
            alpha_back = _alpha(eps_back, omega, ckappa)

        if not self.layers:
            return interfaces(np.ones_like(omega), ckappa, eps_back, alpha_back)

        n = len(self.layers)
        r_te, r_tm = interfaces(eps_layers[-1], alpha_layers[-1], eps_back, alpha_back)

        # Fold layers back to front.  Each step composes the front-interface
        # amplitude rho with the amplitude r seen behind the layer through
        # the round-trip attenuation E = exp(-2 delta):
        #     r' = (rho + r E) / (1 + rho r E)
        # rearranged with grow = -expm1(-2 delta) and s = r + rho so the
        # free-standing slab (r = -rho) reduces to the two-interface formula
        # without cancellation.
        for k in range(n - 1, -1, -1):
            thickness = self.layers[k][1]
            delta = (thickness / C_LIGHT) * alpha_layers[k]
            grow = -np.expm1(-2.0 * delta)
            decay = np.exp(-2.0 * delta)
            if k == 0:
                eps_front = np.ones_like(omega)
                alpha_front = ckappa
            else:
                eps_front = eps_layers[k - 1]
                alpha_front = alpha_layers[k - 1]
            rho_te, rho_tm = interfaces(eps_front, alpha_front, eps_layers[k], alpha_layers[k])

            s = r_te + rho_te
            r_te = (rho_te * grow + decay * s) / (
                (1.0 - rho_te) * (1.0 + rho_te) + rho_te * rho_te * grow + rho_te * decay * s
            )
            s = r_tm + rho_tm
            r_tm = (rho_tm * grow + decay * s) / (
                (1.0 - rho_tm) * (1.0 + rho_tm) + rho_tm * rho_tm * grow + rho_tm * decay * s
            )
        return r_te, r_tm


def layered_reflection(mirror: Mirror, kin: Kinematics) -> float:
    """Reflection amplitude of an arbitrary layer stack at one point."""
    r_te, r_tm = mirror.reflection_amplitudes(
        np.asarray(kin.omega), np.asarray(kin.kappa)
    )
    return float(r_te if kin.pol == TE else r_tm)
