"""
This module contains the cache of two-sided traces on interior edges.

For every interior edge the traces of the discrete fields are evaluated at the points of a
Gauss-Legendre rule from both incident triangles: K+ is the triangle with the smaller id, K- the
other one. Jumps are differences "K+ minus K-" against the global edge normal/tangent; only their
magnitudes enter the indicators, so the orientation convention does not matter.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING
import numpy as np
from thermodarcy.mesh import Mesh
from thermodarcy.fem import EdgeRule, edge_rule, rt0_coefficients, rt0_field_values, p1_element_gradients
from thermodarcy.assembly import CoupledState, force_at

if TYPE_CHECKING:
    from thermodarcy.app.problems import ProblemSpec

__author__ = 'Thermodarcy developers'


@dataclass(frozen=True)
class EdgeTraces:
    """
    Two-sided traces on interior edges.

    `edges`, `plus`, `minus`, `lengths` - interior edge ids, incident triangles and edge lengths,
    `normals`, `tangents`               - unit global normal and tangent of each edge,
    `weights`                           - edge rule weights (summing to one),
    `temperature`                       - T_h at the edge points (continuous),
    `grad_plus`, `grad_minus`           - grad T_h from both sides,
    `velocity_plus`, `velocity_minus`   - u_h from both sides at the edge points,
    `viscosity`, `force`                - nu(T_h) and f at the edge points,
    `pressure_plus`, `pressure_minus`   - p_h of both triangles.
    """

    edges: np.ndarray
    plus: np.ndarray
    minus: np.ndarray
    lengths: np.ndarray
    normals: np.ndarray
    tangents: np.ndarray
    weights: np.ndarray
    temperature: np.ndarray
    grad_plus: np.ndarray
    grad_minus: np.ndarray
    velocity_plus: np.ndarray
    velocity_minus: np.ndarray
    viscosity: np.ndarray
    force: np.ndarray
    pressure_plus: np.ndarray
    pressure_minus: np.ndarray

    def heat_flux_jump(self, kappa: float) -> np.ndarray:
        """Return [[(kappa grad T - T u) . n]] at the edge points."""
        flux_plus = kappa * self.grad_plus[:, None, :] - self.temperature[..., None] * self.velocity_plus
        flux_minus = kappa * self.grad_minus[:, None, :] - self.temperature[..., None] * self.velocity_minus
        return np.einsum('eqd,ed->eq', flux_plus - flux_minus, self.normals)

    def tangential_jump(self) -> np.ndarray:
        """Return [[(f - nu(T) u) . tau]] at the edge points."""
        residual_plus = self.force - self.viscosity[..., None] * self.velocity_plus
        residual_minus = self.force - self.viscosity[..., None] * self.velocity_minus
        return np.einsum('eqd,ed->eq', residual_plus - residual_minus, self.tangents)

    def normal_velocity_jump(self) -> np.ndarray:
        """Return [[u . n]] at the edge points; zero up to round-off for RT0 fields."""
        return np.einsum('eqd,ed->eq', self.velocity_plus - self.velocity_minus, self.normals)

    def pressure_jump(self) -> np.ndarray:
        """Return p_h|K+ - p_h|K- for every interior edge."""
        return self.pressure_plus - self.pressure_minus

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Integrate per-point `values` (ne x nq) over every edge."""
        return self.lengths * (values @ self.weights)

    def scatter(self, values: np.ndarray, size: int) -> np.ndarray:
        """Add per-edge `values` to both incident triangles."""
        result = np.zeros(size)
        np.add.at(result, self.plus, values)
        np.add.at(result, self.minus, values)
        return result


def edge_traces(mesh: Mesh, state: CoupledState, problem: 'ProblemSpec', rule: EdgeRule = None) -> EdgeTraces:
    """Evaluate the traces of `state` on all interior edges with the edge `rule` (10 points by default)."""
    rule = rule or edge_rule()
    interior = np.flatnonzero(~mesh.boundary_edges)
    plus, minus = mesh.edge_triangles[interior, 0], mesh.edge_triangles[interior, 1]
    start = mesh.vertices[mesh.edges[interior, 0]]
    stop = mesh.vertices[mesh.edges[interior, 1]]
    lengths = mesh.edge_lengths[interior]
    tangents = (stop - start) / lengths[:, None]
    normals = np.column_stack((tangents[:, 1], -tangents[:, 0]))
    points = start[:, None, :] + rule.points[None, :, None] * (stop - start)[:, None, :]

    nodal = state.nodal_temperature()
    low, high = nodal[mesh.edges[interior, 0]], nodal[mesh.edges[interior, 1]]
    temperature = low[:, None] + rule.points[None, :] * (high - low)[:, None]
    gradients = p1_element_gradients(mesh, nodal)
    slope, center = rt0_coefficients(mesh, state.edge_velocity())
    viscosity = np.broadcast_to(np.asarray(problem.viscosity(temperature), dtype=float), temperature.shape)

    return EdgeTraces(
        edges=interior,
        plus=plus,
        minus=minus,
        lengths=lengths,
        normals=normals,
        tangents=tangents,
        weights=rule.weights,
        temperature=temperature,
        grad_plus=gradients[plus],
        grad_minus=gradients[minus],
        velocity_plus=rt0_field_values(mesh, slope, center, plus, points),
        velocity_minus=rt0_field_values(mesh, slope, center, minus, points),
        viscosity=viscosity,
        force=force_at(problem, points),
        pressure_plus=state.pressure[plus],
        pressure_minus=state.pressure[minus],
    )
