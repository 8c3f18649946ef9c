"""T-hedra and T-surfaces: construction, isometric deformation, metrology."""

from ._core import (
    DesignData,
    ThedraError,
    axial_residual,
    build,
    check_isometric,
    classify,
    deform,
    dump_design,
    general_from_translational,
    is_parallel,
    load_design,
    miura,
    miura_flat_parameters,
    obj,
    parallel_axial,
    parameter_range,
    planarity,
    preset,
    preset_names,
    smooth_deform,
    smooth_range,
    translational_from_general,
    validate_design,
)

__all__ = [
    "DesignData",
    "ThedraError",
    "axial_residual",
    "build",
    "check_isometric",
    "classify",
    "deform",
    "dump_design",
    "general_from_translational",
    "is_parallel",
    "load_design",
    "miura",
    "miura_flat_parameters",
    "obj",
    "parallel_axial",
    "parameter_range",
    "planarity",
    "preset",
    "preset_names",
    "smooth_deform",
    "smooth_range",
    "translational_from_general",
    "validate_design",
]
