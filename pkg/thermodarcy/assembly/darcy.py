"""
This module contains assembly of the Darcy saddle-point system with temperature dependent viscosity.

    [ A(T)  B^T  0 ] [u]   [F]
    [ B     0    m ] [p] = [0]
    [ 0     m^T  0 ] [l]   [0]

    A_ij = int nu(T_h) psi_j . psi_i,   B_Kj = -int_K div psi_j,   F_i = int f . psi_i,
    m_K = |K| enforces the zero mean of the pressure through the multiplier l.
"""

import logging
from enum import IntEnum
from typing import TYPE_CHECKING, Tuple
import numpy as np
from scipy import sparse as sp
from thermodarcy.mesh import Mesh
from thermodarcy.fem import DofLayout, QuadratureRule, quadrature_rule, rt0_scales, p1_values
from .state import SparseSystem, SystemKind, CoupledState, assemble_triplets, assemble_vector

if TYPE_CHECKING:
    from thermodarcy.app.problems import ProblemSpec

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)


class ViscosityError(ValueError):
    """Raised when the viscosity is not strictly positive."""


class ZeroMean(IntEnum):
    """Enumeration of strategies removing the constant pressure null space."""

    MULTIPLIER = 1  # Lagrange multiplier row/column enforcing int p = 0
    PIN = 2  # pressure of triangle 0 fixed, mean subtracted after the solve (debugging aid)

    def __str__(self):
        return str(self.name)


def _local_frame(mesh: Mesh, rule: QuadratureRule):
    """Return quadrature points relative to barycenters and vertices relative to barycenters."""
    coordinates = mesh.triangle_coordinates()
    points = rule.physical_points(coordinates)
    return points, points - mesh.barycenters[:, None, :], coordinates - mesh.barycenters[:, None, :]


def viscosity_at_quadrature(mesh: Mesh, nodal_temperature: np.ndarray, problem: 'ProblemSpec',
                            rule: QuadratureRule) -> np.ndarray:
    """
    Return nu(T_h) at the quadrature points of every triangle (nt x nq).

    Raise ViscosityError if the viscosity is not positive at some point.
    """
    values = np.asarray(problem.viscosity(p1_values(mesh, nodal_temperature, rule.points)), dtype=float)
    values = np.broadcast_to(values, (mesh.num_triangles, len(rule)))
    if np.any(values <= 0.0):
        element, point = np.argwhere(values <= 0.0)[0]
        raise ViscosityError('Viscosity %g is not positive at quadrature point %d of triangle %d'
                             % (values[element, point], point, element))
    return values


def force_at(problem: 'ProblemSpec', points: np.ndarray) -> np.ndarray:
    """Evaluate the body force at physical `points` (... x 2), return (... x 2)."""
    fx, fy = problem.force(points[..., 0], points[..., 1])
    shape = points.shape[:-1]
    return np.stack((np.broadcast_to(fx, shape), np.broadcast_to(fy, shape)), axis=-1).astype(float)


def darcy_blocks(mesh: Mesh, layout: DofLayout, nodal_temperature: np.ndarray, problem: 'ProblemSpec',
                 rule: QuadratureRule) -> Tuple[sp.csr_matrix, sp.csr_matrix, np.ndarray]:
    """Return the velocity block A(T), the divergence block B and the load F."""
    nt = mesh.num_triangles
    nu = viscosity_at_quadrature(mesh, nodal_temperature, problem, rule)
    points, relative, corners = _local_frame(mesh, rule)
    scales = rt0_scales(mesh)
    weights = rule.weights[None, :] * mesh.areas[:, None]

    # moments of nu around the barycenter: psi_i . psi_j = s_i s_j (y - Q_i).(y - Q_j)
    weighted = weights * nu
    m0 = np.sum(weighted, axis=1)
    m1 = np.einsum('kq,kqd->kd', weighted, relative)
    m2 = np.einsum('kq,kq->k', weighted, np.sum(relative ** 2, axis=-1))
    m1q = np.einsum('kd,kid->ki', m1, corners)
    qq = np.einsum('kid,kjd->kij', corners, corners)
    local = scales[:, :, None] * scales[:, None, :] * (
        m2[:, None, None] - m1q[:, :, None] - m1q[:, None, :] + m0[:, None, None] * qq)

    dofs = layout.edge_dofs[mesh.triangle_edges]
    elements = np.arange(nt)[:, None, None]
    a_matrix = assemble_triplets(dofs[:, :, None], dofs[:, None, :], local, elements,
                                 (layout.num_velocity, layout.num_velocity))

    divergence = -mesh.triangle_edge_signs * mesh.edge_lengths[mesh.triangle_edges]
    b_matrix = assemble_triplets(np.arange(nt)[:, None], dofs, divergence, np.arange(nt)[:, None],
                                 (nt, layout.num_velocity))

    force = force_at(problem, points)
    f0 = np.einsum('kq,kqd->kd', weights, force)
    fy_moment = np.einsum('kq,kqd->k', weights, force * relative)
    local_load = scales * (fy_moment[:, None] - np.einsum('kd,kid->ki', f0, corners))
    load = assemble_vector(dofs, local_load, layout.num_velocity)
    return a_matrix, b_matrix, load


def assemble_darcy(mesh: Mesh, layout: DofLayout, temperature: np.ndarray, problem: 'ProblemSpec',
                   rule: QuadratureRule = None, strategy: ZeroMean = ZeroMean.MULTIPLIER) -> SparseSystem:
    """
    Assemble the Darcy saddle-point system with viscosity nu(T_h).

    `temperature` holds the interior-vertex temperature coefficients,
    `rule` is the quadrature rule (degree 19 by default),
    `strategy` selects how the zero mean of the pressure is imposed.

    Raise ViscosityError if nu(T_h) <= 0 at any quadrature point.
    """
    rule = rule or quadrature_rule()
    a_matrix, b_matrix, load = darcy_blocks(mesh, layout, layout.expand_temperature(temperature), problem, rule)
    nu = layout.num_velocity
    nt = mesh.num_triangles
    if ZeroMean(strategy) == ZeroMean.MULTIPLIER:
        areas = sp.csr_matrix(mesh.areas[:, None])
        matrix = sp.bmat([[a_matrix, b_matrix.T, None],
                          [b_matrix, None, areas],
                          [None, areas.T, None]], format='csr')
        rhs = np.concatenate((load, np.zeros(nt + 1)))
    else:
        pin = sp.diags(np.eye(1, nt, 0).ravel())
        keep = sp.diags(1.0 - np.eye(1, nt, 0).ravel())
        matrix = sp.bmat([[a_matrix, b_matrix.T @ keep],
                          [keep @ b_matrix, pin]], format='csr')
        rhs = np.concatenate((load, np.zeros(nt)))
    matrix.sort_indices()
    log.debug('Darcy system assembled: %d velocity, %d pressure DOFs, nnz=%d', nu, nt, matrix.nnz)
    return SparseSystem(matrix, rhs, SystemKind.DARCY)


def split_darcy_solution(solution: np.ndarray, layout: DofLayout,
                         strategy: ZeroMean = ZeroMean.MULTIPLIER) -> Tuple[np.ndarray, np.ndarray]:
    """Split a Darcy solution vector into velocity coefficients and zero-mean pressures."""
    nu = layout.num_velocity
    velocity = solution[:nu].copy()
    pressure = solution[nu:nu + layout.num_pressure].copy()
    if ZeroMean(strategy) == ZeroMean.PIN:
        areas = layout.mesh.areas
        pressure -= np.dot(areas, pressure) / np.sum(areas)
    return velocity, pressure


def darcy_residual(mesh: Mesh, layout: DofLayout, state: CoupledState, problem: 'ProblemSpec',
                   rule: QuadratureRule = None) -> float:
    """Return the Euclidean norm of (A(T_h) u + B^T p - F, B u) reassembled at the temperature of `state`."""
    rule = rule or quadrature_rule()
    a_matrix, b_matrix, load = darcy_blocks(mesh, layout, state.nodal_temperature(), problem, rule)
    momentum = a_matrix @ state.velocity + b_matrix.T @ state.pressure - load
    mass = b_matrix @ state.velocity
    return float(np.linalg.norm(np.concatenate((momentum, mass))))
