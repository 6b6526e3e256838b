"""This package contains the sparse direct solver and the Picard iteration of the coupled problem."""

__all__ = [
    'LinearSolverError',
    'solve_sparse',
    'PicardReport',
    'PicardNonConvergenceError',
    'picard',
    'solve_darcy',
    'solve_temperature',
    'fixed_point_residual',
]
__version__ = '1.0'
__author__ = 'Thermodarcy developers'

from .linear import LinearSolverError, solve_sparse
from .picard import (
    PicardReport,
    PicardNonConvergenceError,
    picard,
    solve_darcy,
    solve_temperature,
    fixed_point_residual,
)
