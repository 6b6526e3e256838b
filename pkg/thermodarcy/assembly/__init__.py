"""This package contains assembly of the Darcy and temperature systems of the coupled problem."""

__all__ = [
    'SystemKind',
    'SparseSystem',
    'CoupledState',
    'assemble_triplets',
    'assemble_vector',
    'ViscosityError',
    'ZeroMean',
    'viscosity_at_quadrature',
    'force_at',
    'darcy_blocks',
    'assemble_darcy',
    'split_darcy_solution',
    'darcy_residual',
    'dirac_locations',
    'dirac_load',
    'dirac_load_full',
    'smooth_source_load',
    'temperature_load',
    'temperature_matrix',
    'assemble_temperature',
    'temperature_residual',
]
__version__ = '1.0'
__author__ = 'Thermodarcy developers'

from .state import SystemKind, SparseSystem, CoupledState, assemble_triplets, assemble_vector
from .darcy import (
    ViscosityError,
    ZeroMean,
    viscosity_at_quadrature,
    force_at,
    darcy_blocks,
    assemble_darcy,
    split_darcy_solution,
    darcy_residual,
)
from .temperature import (
    dirac_locations,
    dirac_load,
    dirac_load_full,
    smooth_source_load,
    temperature_load,
    temperature_matrix,
    assemble_temperature,
    temperature_residual,
)
