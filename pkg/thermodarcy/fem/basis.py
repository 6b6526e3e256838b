"""
This module contains evaluation of the local basis functions.

    RT0: on a triangle K the basis function of local edge j (opposite vertex P_j) is
        psi_j(x) = s_j |gamma_j| / (2|K|) (x - P_j),
    with s_j the orientation sign of the (K, edge) pair. Its normal component along the global
    edge normal equals one on the edge, so the coefficient of an edge is the (continuous) normal
    velocity and the edge flux is the coefficient times |gamma_j|. div psi_j = s_j |gamma_j| / |K|.

    P1: barycentric functions lambda_i with constant gradients.

A velocity field restricted to K is a_K x + b_K; it is stored around the barycenter x_K as
    u|K(x) = a_K (x - x_K) + u_K,
which keeps evaluation accurate on small triangles far from the origin.
"""

from typing import Tuple
import numpy as np
from thermodarcy.mesh import Mesh

__author__ = 'Thermodarcy developers'


def rt0_scales(mesh: Mesh) -> np.ndarray:
    """Return s_j |gamma_j| / (2|K|) for every triangle and local edge (nt x 3)."""
    lengths = mesh.edge_lengths[mesh.triangle_edges]
    return mesh.triangle_edge_signs * lengths / (2.0 * mesh.areas[:, None])


def rt0_divergence_table(mesh: Mesh) -> np.ndarray:
    """Return div psi_j = s_j |gamma_j| / |K| for every triangle and local edge (nt x 3)."""
    return 2.0 * rt0_scales(mesh)


def rt0_coefficients(mesh: Mesh, edge_values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return the per-triangle representation (a_K, u_K) of the RT0 field with per-edge
    coefficients `edge_values`: u|K(x) = a_K (x - x_K) + u_K.
    """
    weights = rt0_scales(mesh) * edge_values[mesh.triangle_edges]
    slope = np.sum(weights, axis=1)
    offsets = mesh.barycenters[:, None, :] - mesh.triangle_coordinates()
    center = np.einsum('kj,kjd->kd', weights, offsets)
    return slope, center


def rt0_field_values(mesh: Mesh, slope: np.ndarray, center: np.ndarray,
                     elements: np.ndarray, points: np.ndarray) -> np.ndarray:
    """
    Evaluate the RT0 field given by (`slope`, `center`) on `elements` at physical `points`.

    `points` has shape (n x ... x 2) with n = len(elements).
    """
    shape = (len(elements),) + (1,) * (points.ndim - 2)
    relative = points - mesh.barycenters[elements].reshape(shape + (2,))
    return slope[elements].reshape(shape + (1,)) * relative + center[elements].reshape(shape + (2,))


def evaluate_rt0(mesh: Mesh, edge_values: np.ndarray, element: int, point) -> np.ndarray:
    """Evaluate sum_j c_j psi_j(point) on `element` for per-edge coefficients `edge_values`."""
    point = np.asarray(point, dtype=float)
    scales = rt0_scales(mesh)[element]
    coefficients = edge_values[mesh.triangle_edges[element]]
    opposite = mesh.triangle_coordinates([element])[0]
    return np.sum((coefficients * scales)[:, None] * (point[None, :] - opposite), axis=0)


def rt0_divergence(mesh: Mesh, edge_values: np.ndarray) -> np.ndarray:
    """Return the (elementwise constant) divergence of the RT0 field."""
    return np.sum(rt0_divergence_table(mesh) * edge_values[mesh.triangle_edges], axis=1)


def p1_gradients(mesh: Mesh) -> np.ndarray:
    """Return gradients of the barycentric functions of every triangle (nt x 3 x 2)."""
    coords = mesh.triangle_coordinates()
    following = coords[:, [1, 2, 0]]
    preceding = coords[:, [2, 0, 1]]
    gradients = np.stack((following[..., 1] - preceding[..., 1],
                          preceding[..., 0] - following[..., 0]), axis=-1)
    return gradients / (2.0 * mesh.areas[:, None, None])


def p1_element_gradients(mesh: Mesh, nodal_values: np.ndarray) -> np.ndarray:
    """Return the constant gradient of the P1 function with `nodal_values` on every triangle (nt x 2)."""
    return np.einsum('kj,kjd->kd', nodal_values[mesh.triangles], p1_gradients(mesh))


def p1_values(mesh: Mesh, nodal_values: np.ndarray, barycentric: np.ndarray) -> np.ndarray:
    """Evaluate the P1 function at barycentric points (nq x 3) of every triangle, return (nt x nq)."""
    return nodal_values[mesh.triangles] @ barycentric.T


def evaluate_p1(mesh: Mesh, nodal_values: np.ndarray, element: int, point) -> float:
    """Evaluate the P1 function with per-vertex `nodal_values` on `element` at `point`."""
    coordinates = mesh.barycentric(point)[element]
    return float(np.dot(coordinates, nodal_values[mesh.triangles[element]]))


def evaluate_grad_p1(mesh: Mesh, nodal_values: np.ndarray, element: int, point=None) -> np.ndarray:
    """Return the gradient of the P1 function on `element`; it does not depend on `point`."""
    gradients = p1_gradients(mesh)[element]
    return nodal_values[mesh.triangles[element]] @ gradients
