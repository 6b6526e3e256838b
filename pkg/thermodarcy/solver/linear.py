"""This module contains the sparse direct solve shared by the Darcy and temperature systems."""

import logging
from typing import Union
import numpy as np
from scipy import sparse as sp
from scipy.sparse import linalg as spla
from thermodarcy.assembly import SparseSystem

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)

PIVOT_RATIO = 1e-14
RESIDUAL_TOLERANCE = 1e-10


class LinearSolverError(RuntimeError):
    """Raised when a sparse system cannot be solved to the required accuracy."""


def solve_sparse(system: Union[SparseSystem, sp.spmatrix], rhs: np.ndarray = None,
                 tolerance: float = RESIDUAL_TOLERANCE) -> np.ndarray:
    """
    Solve the square sparse system with a direct LU factorization (COLAMD column ordering).

    Accept either a SparseSystem or a matrix with its right-hand side `rhs`.
    Raise LinearSolverError if the factorization is singular, the smallest pivot is below
    1e-14 times the largest one, or the relative residual exceeds `tolerance`.
    """
    if isinstance(system, SparseSystem):
        matrix, rhs = system.matrix, system.rhs
    else:
        matrix = system
    rhs = np.asarray(rhs, dtype=float)
    if matrix.shape[0] != matrix.shape[1] or matrix.shape[0] != len(rhs):
        raise LinearSolverError('System of shape %s does not match right-hand side of length %d'
                                % (matrix.shape, len(rhs)))
    if not len(rhs):
        return np.zeros(0)

    try:
        factor = spla.splu(sp.csc_matrix(matrix), permc_spec='COLAMD')
    except RuntimeError as error:
        raise LinearSolverError('Factorization failed: %s' % error) from error

    pivots = np.abs(factor.U.diagonal())
    ratio = np.min(pivots) / np.max(pivots) if np.max(pivots) > 0 else 0.0
    if ratio < PIVOT_RATIO:
        raise LinearSolverError('Matrix is numerically singular: pivot ratio %.3e is below %.0e'
                                % (ratio, PIVOT_RATIO))

    solution = factor.solve(rhs)
    scale = np.linalg.norm(rhs)
    residual = np.linalg.norm(matrix @ solution - rhs)
    relative = residual / scale if scale > 0 else residual
    log.debug('Solved %d x %d system: pivot ratio %.3e, relative residual %.3e',
              matrix.shape[0], matrix.shape[1], ratio, relative)
    if not np.isfinite(relative) or relative > tolerance:
        raise LinearSolverError('Relative residual %.3e exceeds %.0e (pivot ratio %.3e)'
                                % (relative, tolerance, ratio))
    return solution
