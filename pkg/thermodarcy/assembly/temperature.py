"""
This module contains assembly of the convection-diffusion system of the temperature.

    int kappa grad T . grad S - T u . grad S = sum_{z in D} S(z) (+ int g S for verification sources)

The convection integrand is quadratic on every triangle (u linear, T linear), so the degree 2 rule
integrates it exactly.
"""

import logging
from typing import TYPE_CHECKING, Iterable, List
import numpy as np
from thermodarcy.mesh import Mesh, PointClass, PointLocation, locate
from thermodarcy.fem import DofLayout, QuadratureRule, quadrature_rule, p1_gradients, rt0_coefficients, rt0_field_values
from .state import SparseSystem, SystemKind, CoupledState, assemble_triplets, assemble_vector

if TYPE_CHECKING:
    from thermodarcy.app.problems import ProblemSpec

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)

CONVECTION_DEGREE = 2


def _on_boundary(mesh: Mesh, location: PointLocation) -> bool:
    vertices = mesh.triangles[location.element]
    if location.kind == PointClass.AT_VERTEX:
        return bool(mesh.boundary_vertices[vertices[int(np.argmax(location.coordinates))]])
    if location.kind == PointClass.ON_EDGE:
        local = int(np.flatnonzero(location.coordinates == 0.0)[0])
        return bool(mesh.boundary_edges[mesh.triangle_edges[location.element, local]])
    return False


def dirac_locations(mesh: Mesh, points: Iterable) -> List[PointLocation]:
    """
    Locate every Dirac point; warn when a point lies on the boundary of the domain.

    Raise PointLocationError if a point lies outside the domain.
    """
    locations = []
    for point in points:
        location = locate(mesh, point)
        if _on_boundary(mesh, location):
            log.warning('Dirac point %s lies on the boundary, its functional vanishes on the discrete space',
                        tuple(point))
        locations.append(location)
    return locations


def dirac_load_full(mesh: Mesh, points: Iterable) -> np.ndarray:
    """Return sum_z phi_v(z) for every vertex v, boundary vertices included."""
    load = np.zeros(mesh.num_vertices)
    for location in dirac_locations(mesh, points):
        np.add.at(load, mesh.triangles[location.element], location.coordinates)
    return load


def dirac_load(mesh: Mesh, layout: DofLayout, points: Iterable) -> np.ndarray:
    """
    Return the load vector sum_{z in D} phi_i(z) over the temperature DOFs.

    The global basis is evaluated, so a point on a shared edge or vertex contributes once.
    """
    return dirac_load_full(mesh, points)[layout.temperature_vertices]


def smooth_source_load(mesh: Mesh, layout: DofLayout, source, rule: QuadratureRule = None) -> np.ndarray:
    """Return int g phi_i over the temperature DOFs for a smooth `source` g(x, y)."""
    rule = rule or quadrature_rule()
    points = rule.physical_points(mesh.triangle_coordinates())
    values = np.broadcast_to(source(points[..., 0], points[..., 1]), points.shape[:-1])
    local = mesh.areas[:, None] * ((values * rule.weights) @ rule.points)
    return assemble_vector(layout.vertex_dofs[mesh.triangles], local, layout.num_temperature)


def temperature_load(mesh: Mesh, layout: DofLayout, problem: 'ProblemSpec', rule: QuadratureRule = None) -> np.ndarray:
    """Return the right-hand side: Dirac load plus the optional smooth source."""
    load = dirac_load(mesh, layout, problem.dirac_points)
    if problem.heat_source is not None:
        load = load + smooth_source_load(mesh, layout, problem.heat_source, rule)
    return load


def temperature_matrix(mesh: Mesh, layout: DofLayout, edge_velocity: np.ndarray, kappa: float):
    """Return K + C for the per-edge velocity coefficients `edge_velocity`."""
    gradients = p1_gradients(mesh)
    diffusion = kappa * mesh.areas[:, None, None] * np.einsum('kid,kjd->kij', gradients, gradients)

    rule = quadrature_rule(CONVECTION_DEGREE)
    slope, center = rt0_coefficients(mesh, edge_velocity)
    points = rule.physical_points(mesh.triangle_coordinates())
    velocity = rt0_field_values(mesh, slope, center, np.arange(mesh.num_triangles), points)
    # (u . grad lambda_i) at each quadrature point, weighted by lambda_j
    transport = np.einsum('kqd,kid->kqi', velocity, gradients)
    convection = -mesh.areas[:, None, None] * np.einsum('q,kqi,qj->kij', rule.weights, transport, rule.points)

    dofs = layout.vertex_dofs[mesh.triangles]
    return assemble_triplets(dofs[:, :, None], dofs[:, None, :], diffusion + convection,
                             np.arange(mesh.num_triangles)[:, None, None],
                             (layout.num_temperature, layout.num_temperature))


def assemble_temperature(mesh: Mesh, layout: DofLayout, velocity: np.ndarray, problem: 'ProblemSpec',
                         rule: QuadratureRule = None) -> SparseSystem:
    """
    Assemble the temperature system for the interior-edge velocity coefficients `velocity`.

    `rule` is used for the optional smooth heat source only.
    """
    matrix = temperature_matrix(mesh, layout, layout.expand_velocity(velocity), problem.kappa)
    rhs = temperature_load(mesh, layout, problem, rule)
    log.debug('Temperature system assembled: %d DOFs, nnz=%d', layout.num_temperature, matrix.nnz)
    return SparseSystem(matrix, rhs, SystemKind.TEMPERATURE)


def temperature_residual(mesh: Mesh, layout: DofLayout, state: CoupledState, problem: 'ProblemSpec',
                         rule: QuadratureRule = None) -> float:
    """Return the Euclidean norm of (K + C(u_h)) T - b reassembled at the velocity of `state`."""
    system = assemble_temperature(mesh, layout, state.velocity, problem, rule)
    return float(np.linalg.norm(system.matrix @ state.temperature - system.rhs))
