"""Dielectric permittivity models evaluated on the imaginary frequency axis.

Every model is a sum of manifestly positive analytic terms on top of the
vacuum value 1, so eps(i*omega) is real, >= 1 and non-increasing in omega.
Models are immutable; composition happens by concatenating terms.

Frequencies are angular frequencies in rad/s throughout.  Catalog
parameters quoted in eV are converted with the fixed equivalence in
:mod:`lifshitz.constants`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from .constants import E_CHARGE, EPS0_SI, M_ELECTRON, ev_to_rad_s

__all__ = [
    "AnalyticTerm",
    "CarrierSpec",
    "ConstantOffset",
    "DielectricModel",
    "Drude",
    "HighFreqPole",
    "Lorentz",
    "Plasma",
    "carrier_to_drude",
    "gold_drude",
    "gold_plasma",
    "list_model_ids",
    "resolve_model",
    "sapphire",
    "silicon_doped",
    "silicon_intrinsic",
    "silicon_laser_excited",
    "vacuum",
    "vo2_insulating",
    "vo2_metallic",
]

FloatOrArray = Union[float, np.ndarray]


@dataclass(frozen=True)
class ConstantOffset:
    """Frequency-independent contribution (a high-frequency offset)."""

    value: float

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError(f"constant offset must be positive, got {self.value}")

    diverges_at_zero = False

    def contribution(self, omega: np.ndarray) -> np.ndarray:
        return np.full_like(omega, self.value)


@dataclass(frozen=True)
class Drude:
    """Free-carrier response omega_p^2 / (omega * (omega + gamma))."""

    omega_p: float  # rad/s
    gamma: float    # rad/s; 0 gives the dissipationless (plasma) limit

    def __post_init__(self):
        if self.omega_p <= 0:
            raise ValueError(f"plasma frequency must be positive, got {self.omega_p}")
        if self.gamma < 0:
            raise ValueError(f"relaxation rate must be >= 0, got {self.gamma}")

    diverges_at_zero = True

    def contribution(self, omega: np.ndarray) -> np.ndarray:
        return self.omega_p**2 / (omega * (omega + self.gamma))


@dataclass(frozen=True)
class Plasma:
    """Dissipationless free-carrier response omega_p^2 / omega^2."""

    omega_p: float  # rad/s

    def __post_init__(self):
        if self.omega_p <= 0:
            raise ValueError(f"plasma frequency must be positive, got {self.omega_p}")

    diverges_at_zero = True

    def contribution(self, omega: np.ndarray) -> np.ndarray:
        return (self.omega_p / omega) ** 2


@dataclass(frozen=True)
class Lorentz:
    """Bound oscillator s / (1 + (omega/omega_res)^2 + damping*omega/omega_res).

    ``damping`` is the dimensionless width of the resonance; 0 gives an
    undamped pole, which is how static permittivities are built up.
    """

    strength: float   # dimensionless
    omega_res: float  # rad/s
    damping: float    # dimensionless

    def __post_init__(self):
        if self.strength <= 0:
            raise ValueError(f"oscillator strength must be positive, got {self.strength}")
        if self.omega_res <= 0:
            raise ValueError(f"resonance frequency must be positive, got {self.omega_res}")
        if self.damping < 0:
            raise ValueError(f"damping must be >= 0, got {self.damping}")

    diverges_at_zero = False

    def contribution(self, omega: np.ndarray) -> np.ndarray:
        ratio = omega / self.omega_res
        return self.strength / (1.0 + ratio * ratio + self.damping * ratio)


@dataclass(frozen=True)
class HighFreqPole:
    """Interband background amplitude / (1 + (omega/omega_inf)^2)."""

    amplitude: float  # dimensionless
    omega_inf: float  # rad/s

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ValueError(f"pole amplitude must be positive, got {self.amplitude}")
        if self.omega_inf <= 0:
            raise ValueError(f"pole frequency must be positive, got {self.omega_inf}")

    diverges_at_zero = False

    def contribution(self, omega: np.ndarray) -> np.ndarray:
        ratio = omega / self.omega_inf
        return self.amplitude / (1.0 + ratio * ratio)


AnalyticTerm = Union[ConstantOffset, Drude, Plasma, Lorentz, HighFreqPole]


@dataclass(frozen=True)
class DielectricModel:
    """Permittivity on the imaginary axis: eps(i*omega) = 1 + sum of terms.

    ``table`` optionally adds the causality integral of tabulated loss data
    (see :mod:`lifshitz.optical_data`) on top of the analytic terms.
    """

    terms: tuple = ()
    label: str = ""
    table: object = None  # optional OpticalTable

    @property
    def diverges_at_zero(self) -> bool:
        """True when the model has free carriers, so eps(i*0) is undefined."""
        return any(t.diverges_at_zero for t in self.terms)

    def epsilon(self, omega: FloatOrArray) -> FloatOrArray:
        """Evaluate eps(i*omega) for omega >= 0 (rad/s), scalar or array."""
        w = np.asarray(omega, dtype=float)
        if np.any(w < 0):
            raise ValueError("imaginary frequency must be >= 0")
        if self.diverges_at_zero and np.any(w == 0):
            raise ValueError(
                f"model {self.label!r} has free carriers; eps(i*0) diverges"
            )
        eps = np.ones_like(w)
        for term in self.terms:
            eps = eps + term.contribution(w)
        if self.table is not None:
            from .optical_data import kk_epsilon

            eps = eps + kk_epsilon(self.table, w) - 1.0
        if np.isscalar(omega) or np.ndim(omega) == 0:
            return float(eps)
        return eps

    def static_value(self) -> float:
        """eps(i*0); raises for models with free carriers."""
        return float(self.epsilon(0.0))

    def with_terms(self, *extra: AnalyticTerm, label: str | None = None) -> "DielectricModel":
        """New model with ``extra`` terms appended."""
        return replace(
            self,
            terms=self.terms + tuple(extra),
            label=self.label if label is None else label,
        )

    def drude_parameters(self) -> tuple[tuple[float, float], ...]:
        """(omega_p, gamma) of every free-carrier term, gamma=0 for plasma."""
        out = []
        for t in self.terms:
            if isinstance(t, Drude):
                out.append((t.omega_p, t.gamma))
            elif isinstance(t, Plasma):
                out.append((t.omega_p, 0.0))
        return tuple(out)


@dataclass(frozen=True)
class CarrierSpec:
    """Free-carrier description: density, effective mass, resistivity."""

    density_cm3: float       # carrier density, cm^-3
    mass_ratio: float        # effective mass in units of the electron mass
    resistivity_ohm_cm: float

    def __post_init__(self):
        if self.density_cm3 <= 0 or self.mass_ratio <= 0 or self.resistivity_ohm_cm <= 0:
            raise ValueError("carrier density, mass ratio and resistivity must be positive")


def carrier_to_drude(spec: CarrierSpec) -> tuple[float, float]:
    """Free-carrier (omega_p, gamma) in rad/s from density, mass and resistivity.

    omega_p = sqrt(N e^2 / (eps_0 m*)) and gamma = N e^2 rho / m*, evaluated
    in SI units (eps_0 here is the electric constant, not a static
    permittivity).
    """
    n_m3 = spec.density_cm3 * 1e6
    m_star = spec.mass_ratio * M_ELECTRON
    omega_p = math.sqrt(n_m3 * E_CHARGE**2 / (EPS0_SI * m_star))
    gamma = n_m3 * E_CHARGE**2 * (spec.resistivity_ohm_cm * 1e-2) / m_star
    return omega_p, gamma


# --------------------------------------------------------------------------
# Material catalog
# --------------------------------------------------------------------------

# Intrinsic silicon: single undamped pole between the static value 11.87
# and the high-frequency value 1.035, cutoff at 6.6e15 rad/s.
SI_EPS_STATIC = 11.87
SI_EPS_INF = 1.035
SI_OMEGA0 = 6.6e15  # rad/s

# p-doped silicon free-carrier parameters, N (cm^-3) -> (omega_p, gamma) in eV.
# The 5e14 entry is the weak-doping reference used alongside photoexcitation.
SILICON_DOPING_EV = {
    1.1e15: (0.0021, 0.0078),
    1.3e18: (0.0725, 0.0247),
    1.4e19: (0.238, 0.0518),
    1e20: (0.636, 0.06529),
    5e14: (0.00184, 0.00329),
}

# Photoexcited carriers in silicon: (omega_p, gamma) in eV for holes and
# electrons at ~2e19 cm^-3 pulse-induced density.
SI_LASER_HOLES_EV = (0.368, 0.00329)
SI_LASER_ELECTRONS_EV = (0.329, 0.01185)

# VO2 oscillator fits (Verleur-type thin-film models), one row per
# resonance: (strength, resonance in eV, dimensionless damping).
VO2_OSC_INSULATING = (
    (0.79, 1.02, 0.55),
    (0.474, 1.30, 0.55),
    (0.483, 1.50, 0.50),
    (0.536, 2.75, 0.22),
    (1.316, 3.49, 0.47),
    (1.060, 3.76, 0.38),
    (0.99, 5.1, 0.385),
)
VO2_OSC_METALLIC = (
    (1.816, 0.86, 0.95),
    (0.972, 2.8, 0.23),
    (1.04, 3.48, 0.28),
    (1.05, 4.6, 0.34),
)
VO2_EPS_INF_INSULATING = 4.26
VO2_EPS_INF_METALLIC = 3.95
VO2_OMEGA_INF_EV = 15.0
VO2_DRUDE_EV = (3.33, 0.66)

# Sapphire: three undamped poles, (amplitude, pole frequency in eV).
AL2O3_POLES_EV = ((1.023, 20.19), (1.058264, 11.21), (5.280792, 0.07))

# Gold free-carrier parameters in eV.
GOLD_DRUDE_EV = (9.0, 0.035)


def vacuum() -> DielectricModel:
    """eps(i*omega) = 1, handy as a stub and for degenerate stacks."""
    return DielectricModel(terms=(), label="vacuum")


def silicon_intrinsic() -> DielectricModel:
    """Intrinsic silicon, static value 11.87 falling to 1.035 above cutoff."""
    return DielectricModel(
        terms=(
            ConstantOffset(SI_EPS_INF - 1.0),
            Lorentz(SI_EPS_STATIC - SI_EPS_INF, SI_OMEGA0, 0.0),
        ),
        label="si",
    )


def silicon_doped(base: DielectricModel, omega_p: float, gamma: float) -> DielectricModel:
    """``base`` plus a free-carrier term; gamma=0 selects the plasma limit.

    Parameters are angular frequencies in rad/s.
    """
    if gamma == 0.0:
        term: AnalyticTerm = Plasma(omega_p)
    else:
        term = Drude(omega_p, gamma)
    return base.with_terms(term, label=f"{base.label}+carriers")


def silicon_doped_catalog(density_cm3: float) -> DielectricModel:
    """Doped silicon at one of the cataloged densities (cm^-3)."""
    try:
        omega_p_ev, gamma_ev = SILICON_DOPING_EV[density_cm3]
    except KeyError:
        known = ", ".join(f"{n:g}" for n in sorted(SILICON_DOPING_EV))
        raise ValueError(
            f"no carrier parameters for N={density_cm3:g} cm^-3; cataloged: {known}"
        ) from None
    model = silicon_doped(
        silicon_intrinsic(), ev_to_rad_s(omega_p_ev), ev_to_rad_s(gamma_ev)
    )
    return replace(model, label=f"si-doped:N={density_cm3:g}")


def silicon_laser_excited(
    base: DielectricModel | None = None, use_plasma: bool = False
) -> DielectricModel:
    """Silicon with photoinduced electron and hole carrier terms.

    With ``use_plasma`` the two carrier species are dissipationless
    (gamma = 0); otherwise each keeps its own relaxation rate.
    """
    if base is None:
        base = silicon_intrinsic()
    terms = []
    for omega_p_ev, gamma_ev in (SI_LASER_HOLES_EV, SI_LASER_ELECTRONS_EV):
        omega_p = ev_to_rad_s(omega_p_ev)
        if use_plasma:
            terms.append(Plasma(omega_p))
        else:
            terms.append(Drude(omega_p, ev_to_rad_s(gamma_ev)))
    kind = "plasma" if use_plasma else "drude"
    return base.with_terms(*terms, label=f"si-laser-{kind}")


def _oscillator_terms(rows) -> tuple:
    return tuple(
        Lorentz(strength, ev_to_rad_s(omega_ev), damping)
        for strength, omega_ev, damping in rows
    )


def vo2_insulating() -> DielectricModel:
    """VO2 below the metal-insulator transition: oscillators only."""
    return DielectricModel(
        terms=(
            HighFreqPole(VO2_EPS_INF_INSULATING - 1.0, ev_to_rad_s(VO2_OMEGA_INF_EV)),
        )
        + _oscillator_terms(VO2_OSC_INSULATING),
        label="vo2-ins",
    )


def vo2_metallic() -> DielectricModel:
    """VO2 above the transition: free carriers plus four oscillators."""
    omega_p_ev, gamma_ev = VO2_DRUDE_EV
    return DielectricModel(
        terms=(
            Drude(ev_to_rad_s(omega_p_ev), ev_to_rad_s(gamma_ev)),
            HighFreqPole(VO2_EPS_INF_METALLIC - 1.0, ev_to_rad_s(VO2_OMEGA_INF_EV)),
        )
        + _oscillator_terms(VO2_OSC_METALLIC),
        label="vo2-met",
    )


def sapphire() -> DielectricModel:
    """Al2O3 substrate model: three undamped poles, static value 8.362."""
    return DielectricModel(
        terms=tuple(
            HighFreqPole(amplitude, ev_to_rad_s(f_ev)) for amplitude, f_ev in AL2O3_POLES_EV
        ),
        label="al2o3",
    )


def gold_drude() -> DielectricModel:
    """Gold with dissipative free carriers."""
    omega_p_ev, gamma_ev = GOLD_DRUDE_EV
    return DielectricModel(
        terms=(Drude(ev_to_rad_s(omega_p_ev), ev_to_rad_s(gamma_ev)),),
        label="au-drude",
    )


def gold_plasma() -> DielectricModel:
    """Gold in the dissipationless (plasma) limit."""
    omega_p_ev, _ = GOLD_DRUDE_EV
    return DielectricModel(terms=(Plasma(ev_to_rad_s(omega_p_ev)),), label="au-plasma")


# --------------------------------------------------------------------------
# String-id registry used by the CLI and config files
# --------------------------------------------------------------------------

_FIXED_IDS = {
    "vacuum": vacuum,
    "si": silicon_intrinsic,
    "vo2-ins": vo2_insulating,
    "vo2-met": vo2_metallic,
    "al2o3": sapphire,
    "au-drude": gold_drude,
    "au-plasma": gold_plasma,
    "si-laser-drude": lambda: silicon_laser_excited(use_plasma=False),
    "si-laser-plasma": lambda: silicon_laser_excited(use_plasma=True),
}


def list_model_ids() -> list[str]:
    """All recognized catalog ids, doped-silicon entries spelled out."""
    ids = sorted(_FIXED_IDS)
    ids += [f"si-doped:N={n:g}" for n in sorted(SILICON_DOPING_EV)]
    return ids


def resolve_model(model_id: str, extra: dict[str, DielectricModel] | None = None) -> DielectricModel:
    """Look up a catalog model by string id.

    ``extra`` maps additional ids (custom models from a config file, loaded
    tables) checked before the built-in catalog.
    """
    key = model_id.strip()
    if extra and key in extra:
        return extra[key]
    if key in _FIXED_IDS:
        return _FIXED_IDS[key]()
    if key.startswith("si-doped:"):
        tail = key[len("si-doped:"):]
        if not tail.startswith("N="):
            raise ValueError(f"malformed doped-silicon id {model_id!r}; expected si-doped:N=<density>")
        try:
            density = float(tail[2:])
        except ValueError:
            raise ValueError(f"bad density in model id {model_id!r}") from None
        return silicon_doped_catalog(density)
    raise ValueError(
        f"unknown model id {model_id!r}; known ids: {', '.join(list_model_ids())}"
    )
