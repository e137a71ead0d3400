"""Reduction factor of the Casimir force between two plane mirrors.

The force between real mirrors separated by L is written as eta * F_ideal
with F_ideal = hbar c pi^2 A / (240 L^4); eta is a double integral over
imaginary frequency and transverse wavevector of the round-trip
radiation-pressure kernel built from the mirrors' reflection amplitudes.

The integral is computed in the dimensionless variables

    x = 2 kappa L            in (0, cutoff]
    u = sqrt(omega / (c kappa))   in (0, 1]

which give

    eta = 15/pi^4 * sum_pol  int dx int du  x^3 u  g e^-x / (1 - g e^-x)

with g the product of the two mirrors' amplitudes at (omega, kappa).  The
cutoff in x is separation-independent because the e^-x factor is; the u^2
substitution flattens the sqrt(omega) edge that dissipative conductors
produce near omega -> 0.  All quadrature nodes are interior, so omega = 0
is never requested from the dielectric models.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT, HBAR
from .quadrature import integrate_panels

__all__ = [
    "CavityConfig",
    "ConstantReflector",
    "QuadratureSpec",
    "ReductionResult",
    "SweepRow",
    "absolute_force",
    "reduction_factor",
    "sweep",
]

ETA_PREFACTOR = 15.0 / math.pi**4


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for the reduction-factor integral."""

    rel_tol: float = 1e-6
    max_evals: int = 4_000_000
    cutoff_mult: float = 40.0  # upper limit of x = 2 kappa L; tail ~ e^-cutoff

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1e-2):
            raise ValueError(f"rel_tol must be in (0, 1e-2), got {self.rel_tol}")
        if self.cutoff_mult < 20.0:
            raise ValueError(f"cutoff_mult must be >= 20, got {self.cutoff_mult}")
        if self.max_evals <= 0:
            raise ValueError("max_evals must be positive")


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class CavityConfig:
    """Two mirrors facing each other across a vacuum gap."""

    mirror_a: object
    mirror_b: object
    separation: float       # meters
    area: float | None = None  # m^2, only needed for absolute forces

    def __post_init__(self):
        if self.separation <= 0:
            raise ValueError(f"separation must be positive, got {self.separation}")
        if self.area is not None and self.area <= 0:
            raise ValueError(f"area must be positive, got {self.area}")
        for m in (self.mirror_a, self.mirror_b):
            if not hasattr(m, "reflection_amplitudes"):
                raise TypeError(
                    "mirrors must provide reflection_amplitudes(omega, kappa)"
                )


@dataclass(frozen=True)
class ReductionResult:
    """Reduction factor with its error estimate and cost accounting."""

    eta: float
    est_error: float
    evals: int
    per_polarization: tuple[float, float]  # (eta_TE, eta_TM)
    converged: bool = True


@dataclass(frozen=True)
class ConstantReflector:
    """Mirror stub with frequency-independent amplitudes, for oracles."""

    r_te: float
    r_tm: float

    def __post_init__(self):
        if abs(self.r_te) > 1.0 or abs(self.r_tm) > 1.0:
            raise ValueError("constant amplitudes must satisfy |r| <= 1")

    @classmethod
    def uniform(cls, r: float) -> "ConstantReflector":
        return cls(r, r)

    def reflection_amplitudes(self, omega, kappa):
        shape = np.broadcast(np.asarray(omega), np.asarray(kappa)).shape
        return np.full(shape, self.r_te), np.full(shape, self.r_tm)


def reduction_factor(
    cfg: CavityConfig, quad: QuadratureSpec = DEFAULT_QUADRATURE
) -> ReductionResult:
    """Reduction factor eta = F / F_ideal for the given cavity.

    Dissimilar mirrors enter through the product of their amplitudes, the
    unique symmetric combination that reduces to r^2 for identical
    mirrors.  eta splits exactly into eta_TE + eta_TM, both returned.
    """
    L = cfg.separation
    same = cfg.mirror_a is cfg.mirror_b or cfg.mirror_a == cfg.mirror_b

    def integrand(x, u):
        kappa = x / (2.0 * L)
        ckappa = np.broadcast_to((kappa * C_LIGHT)[:, None], (x.size, u.size))
        omega = ckappa * (u * u)[None, :]
        kappa2d = ckappa / C_LIGHT
        te_a, tm_a = cfg.mirror_a.reflection_amplitudes(omega, kappa2d)
        if same:
            te_b, tm_b = te_a, tm_a
        else:
            te_b, tm_b = cfg.mirror_b.reflection_amplitudes(omega, kappa2d)
        decay = np.exp(-x)[:, None]
        grow = -np.expm1(-x)[:, None]  # 1 - e^-x, accurate for small x
        weight = (x**3)[:, None] * u[None, :]
        out = np.empty((2, x.size, u.size))
        for c, (ra, rb) in enumerate(((te_a, te_b), (tm_a, tm_b))):
            g = ra * rb
            # 1 - g e^-x written cancellation-free for g -> 1, x -> 0
            out[c] = weight * g * decay / ((1.0 - g) + g * grow)
        return out

    X = quad.cutoff_mult
    x_edges = X * np.array([0.0, 1 / 16, 1 / 8, 1 / 4, 1 / 2, 1.0])
    u_edges = np.array([0.0, 0.5, 1.0])
    result = integrate_panels(integrand, x_edges, u_edges, quad.rel_tol, quad.max_evals)

    eta_te, eta_tm = (ETA_PREFACTOR * result.value).tolist()
    err = float(ETA_PREFACTOR * result.error.sum())
    return ReductionResult(
        eta=eta_te + eta_tm,
        est_error=err,
        evals=result.evals,
        per_polarization=(eta_te, eta_tm),
        converged=result.converged,
    )


def absolute_force(eta: float, separation: float, area: float) -> float:
    """Casimir force in newtons; positive means attraction."""
    if separation <= 0 or area <= 0:
        raise ValueError("separation and area must be positive")
    return eta * HBAR * C_LIGHT * math.pi**2 * area / (240.0 * separation**4)


@dataclass(frozen=True)
class SweepRow:
    """One entry of a sweep: the input config plus its result or failure."""

    config: CavityConfig
    result: ReductionResult | None
    error: str | None = None


def sweep(
    configs,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    max_workers: int = 1,
) -> list[SweepRow]:
    """Evaluate the reduction factor for every config, order-preserving.

    Failures are recorded per row and do not abort the sweep.  Rows are
    independent, so they may run on a thread pool; the output order always
    matches the input order.
    """

    def run(cfg: CavityConfig) -> SweepRow:
        try:
            return SweepRow(cfg, reduction_factor(cfg, quad))
        except Exception as exc:  # any row failure becomes a recorded entry
            return SweepRow(cfg, None, f"{type(exc).__name__}: {exc}")

    configs = list(configs)
    if max_workers <= 1 or len(configs) <= 1:
        return [run(cfg) for cfg in configs]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(run, configs))
