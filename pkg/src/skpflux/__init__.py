"""Screened Kratzer potential under a magnetic field and Aharonov-Bohm flux.

Closed-form spectrum, radial wavefunctions, a finite-difference oracle,
partition function routes and the derived thermodynamic and magnetic
response.
"""

from .model import (
    NATURAL,
    Constants,
    DimensionlessSet,
    DomainError,
    FieldConfig,
    NoBoundSpectrumError,
    PotentialParams,
    QuantumState,
    SpectrumCutoffs,
    cutoffs,
    dimensionless_map,
    energy_2d,
    energy_3d,
    energy_dB,
    energy_dB2,
    energy_levels,
    potential_eval,
    quantization_residual,
)
from .thermo import (
    Convention,
    ThermoPoint,
    ZMethod,
    partition_closed,
    partition_direct,
    partition_quadrature,
    thermo_point,
)

__version__ = "0.1.0"

__all__ = [
    "NATURAL",
    "Constants",
    "Convention",
    "DimensionlessSet",
    "DomainError",
    "FieldConfig",
    "NoBoundSpectrumError",
    "PotentialParams",
    "QuantumState",
    "SpectrumCutoffs",
    "ThermoPoint",
    "ZMethod",
    "cutoffs",
    "dimensionless_map",
    "energy_2d",
    "energy_3d",
    "energy_dB",
    "energy_dB2",
    "energy_levels",
    "partition_closed",
    "partition_direct",
    "partition_quadrature",
    "potential_eval",
    "quantization_residual",
    "thermo_point",
]
