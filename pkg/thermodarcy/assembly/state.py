"""
This module contains the algebraic containers shared by assembly and solvers.

    SparseSystem  - square sparse matrix with its right-hand side, tagged with the DOF space
    CoupledState  - velocity, pressure and temperature coefficients living on one DofLayout
"""

from dataclasses import dataclass
from enum import IntEnum
import numpy as np
from scipy import sparse as sp
from thermodarcy.fem import DofLayout

__author__ = 'Thermodarcy developers'


class SystemKind(IntEnum):
    """Enumeration of the assembled DOF spaces."""

    DARCY = 1
    TEMPERATURE = 2

    def __str__(self):
        return str(self.name)


@dataclass
class SparseSystem:
    """Square sparse `matrix` (CSR), right-hand side `rhs` and the DOF space `kind`."""

    matrix: sp.csr_matrix
    rhs: np.ndarray
    kind: SystemKind

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def assemble_triplets(rows: np.ndarray, cols: np.ndarray, values: np.ndarray, elements: np.ndarray,
                      shape) -> sp.csr_matrix:
    """
    Assemble local contributions into a CSR matrix.

    Triplets are sorted by (row, col, element) before duplicates are summed, which makes the
    floating point sums independent of the assembly order.
    """
    rows, cols, values, elements = (np.ravel(a) for a in np.broadcast_arrays(rows, cols, values, elements))
    keep = (rows >= 0) & (cols >= 0)
    rows, cols, values, elements = rows[keep], cols[keep], values[keep], elements[keep]
    order = np.lexsort((elements, cols, rows))
    matrix = sp.coo_matrix((values[order], (rows[order], cols[order])), shape=shape).tocsr()
    matrix.sum_duplicates()
    return matrix


def assemble_vector(rows: np.ndarray, values: np.ndarray, size: int) -> np.ndarray:
    """Sum local vector contributions into a global vector, dropping eliminated (-1) rows."""
    rows, values = (np.ravel(a) for a in np.broadcast_arrays(rows, values))
    keep = rows >= 0
    return np.bincount(rows[keep], weights=values[keep], minlength=size).astype(float)


@dataclass
class CoupledState:
    """
    Discrete solution (u_h, p_h, T_h) on `layout`.

    `velocity` holds one coefficient per interior edge,
    `pressure` one value per triangle (zero mean),
    `temperature` one value per interior vertex.
    """

    layout: DofLayout
    velocity: np.ndarray
    pressure: np.ndarray
    temperature: np.ndarray

    @classmethod
    def zero(cls, layout: DofLayout) -> 'CoupledState':
        """Return the all-zero state on `layout`."""
        return cls(layout, np.zeros(layout.num_velocity), np.zeros(layout.num_pressure),
                   np.zeros(layout.num_temperature))

    @property
    def mesh(self):
        return self.layout.mesh

    def vector(self) -> np.ndarray:
        """Return the concatenated coefficient vector (u, p, T)."""
        return np.concatenate((self.velocity, self.pressure, self.temperature))

    def edge_velocity(self) -> np.ndarray:
        """Return velocity coefficients of all edges (zero on the boundary)."""
        return self.layout.expand_velocity(self.velocity)

    def nodal_temperature(self) -> np.ndarray:
        """Return temperature values of all vertices (zero on the boundary)."""
        return self.layout.expand_temperature(self.temperature)

    def pressure_mean(self) -> float:
        """Return the integral of p_h over the domain."""
        return float(np.dot(self.layout.mesh.areas, self.pressure))

    def scaled(self, factor: float) -> 'CoupledState':
        """Return a copy with all coefficients multiplied by `factor`."""
        return CoupledState(self.layout, factor * self.velocity, factor * self.pressure, factor * self.temperature)
