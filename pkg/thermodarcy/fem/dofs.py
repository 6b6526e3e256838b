"""
This module contains the degree of freedom layout of the discrete spaces.

    velocity    - RT0 edge fluxes of interior edges (u.n = 0 is imposed on the boundary)
    pressure    - P0 values of all triangles (zero mean is imposed when solving)
    temperature - P1 values of interior vertices (T = 0 is imposed on the boundary)
"""

import numpy as np
from thermodarcy.mesh import Mesh

__author__ = 'Thermodarcy developers'


def _numbering(free: np.ndarray) -> np.ndarray:
    numbering = -np.ones(len(free), dtype=np.int64)
    numbering[free] = np.arange(np.count_nonzero(free))
    numbering.setflags(write=False)
    return numbering


class DofLayout:
    """
    Global numbering of the velocity, pressure and temperature unknowns on a `mesh`.

    Eliminated (boundary) entities are numbered -1 and never enter assembled systems.
    """

    def __init__(self, mesh: Mesh):
        self._mesh = mesh
        self._edge_dofs = _numbering(~mesh.boundary_edges)
        self._vertex_dofs = _numbering(~mesh.boundary_vertices)
        self._velocity_edges = np.flatnonzero(~mesh.boundary_edges)
        self._temperature_vertices = np.flatnonzero(~mesh.boundary_vertices)

    def __str__(self):
        return 'DofLayout(velocity={}, pressure={}, temperature={}, ndof={})'.format(
            self.num_velocity, self.num_pressure, self.num_temperature, self.ndof)

    @property
    def mesh(self) -> Mesh:
        return self._mesh

    @property
    def edge_dofs(self) -> np.ndarray:
        """Get the velocity DOF of each edge, -1 for boundary edges."""
        return self._edge_dofs

    @property
    def vertex_dofs(self) -> np.ndarray:
        """Get the temperature DOF of each vertex, -1 for boundary vertices."""
        return self._vertex_dofs

    @property
    def velocity_edges(self) -> np.ndarray:
        """Get the edge carrying each velocity DOF."""
        return self._velocity_edges

    @property
    def temperature_vertices(self) -> np.ndarray:
        """Get the vertex carrying each temperature DOF."""
        return self._temperature_vertices

    @property
    def num_velocity(self) -> int:
        return len(self._velocity_edges)

    @property
    def num_pressure(self) -> int:
        return self._mesh.num_triangles

    @property
    def num_temperature(self) -> int:
        return len(self._temperature_vertices)

    @property
    def ndof(self) -> int:
        """Get the total number of DOFs (interior edges + triangles + interior vertices)."""
        return self.num_velocity + self.num_pressure + self.num_temperature

    def expand_velocity(self, coefficients: np.ndarray) -> np.ndarray:
        """Return per-edge velocity coefficients, zero on boundary edges."""
        full = np.zeros(self._mesh.num_edges)
        full[self._velocity_edges] = coefficients
        return full

    def expand_temperature(self, coefficients: np.ndarray) -> np.ndarray:
        """Return per-vertex temperature values, zero on boundary vertices."""
        full = np.zeros(self._mesh.num_vertices)
        full[self._temperature_vertices] = coefficients
        return full
