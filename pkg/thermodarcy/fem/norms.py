"""This module contains discrete error norms used by manufactured-solution verification."""

from typing import Callable
import numpy as np
from thermodarcy.mesh import Mesh
from .quadrature import QuadratureRule
from .basis import p1_element_gradients, p1_values

__author__ = 'Thermodarcy developers'


def l2_error(mesh: Mesh, nodal_values: np.ndarray, exact: Callable, rule: QuadratureRule) -> float:
    """Return ||T - T_h||_{L2} for the P1 function with per-vertex `nodal_values` and `exact`(x, y)."""
    points = rule.physical_points(mesh.triangle_coordinates())
    difference = exact(points[..., 0], points[..., 1]) - p1_values(mesh, nodal_values, rule.points)
    return float(np.sqrt(np.sum(mesh.areas * (difference ** 2 @ rule.weights))))


def h1_seminorm_error(mesh: Mesh, nodal_values: np.ndarray, exact_gradient: Callable,
                      rule: QuadratureRule) -> float:
    """Return ||grad(T - T_h)||_{L2}; `exact_gradient`(x, y) returns the pair of partial derivatives."""
    points = rule.physical_points(mesh.triangle_coordinates())
    gx, gy = exact_gradient(points[..., 0], points[..., 1])
    gradient = p1_element_gradients(mesh, nodal_values)
    squared = (gx - gradient[:, 0, None]) ** 2 + (gy - gradient[:, 1, None]) ** 2
    return float(np.sqrt(np.sum(mesh.areas * (squared @ rule.weights))))
