"""Casimir force reduction factors for plane mirrors of finite thickness.

The package evaluates the reduction of the zero-temperature Casimir force
between two plane-parallel mirrors relative to the perfect-reflector value,
for bulk mirrors, free-standing slabs and films on substrates, with a
catalog of dielectric models (silicon, gold, VO2, sapphire) and support for
tabulated optical data.
"""

from .asymptotics import (
    AsymptoticReport,
    asymptotic_report,
    effective_thickness,
    eta_constant_reflectivity,
    phase_factor_curves,
    slab_static_reflection,
    static_reflection,
)
from .casimir import (
    CavityConfig,
    ConstantReflector,
    QuadratureSpec,
    ReductionResult,
    SweepRow,
    absolute_force,
    reduction_factor,
    sweep,
)
from .dielectric import (
    CarrierSpec,
    DielectricModel,
    carrier_to_drude,
    gold_drude,
    gold_plasma,
    list_model_ids,
    resolve_model,
    sapphire,
    silicon_doped,
    silicon_intrinsic,
    silicon_laser_excited,
    vo2_insulating,
    vo2_metallic,
)
from .optical_data import OpticalTable, kk_epsilon, read_table, table_from_nk
from .reflection import (
    Kinematics,
    Mirror,
    fresnel_bulk,
    layered_reflection,
    optical_length,
    slab_reflection,
)

__version__ = "0.1.0"
