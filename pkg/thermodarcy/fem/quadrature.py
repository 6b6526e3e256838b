"""
This module provides numerical quadrature on triangles and edges.

    Triangle rules are given in barycentric coordinates with weights summing to one; at use they
    are scaled by the triangle area |K|. Degree 1 is the barycenter rule, degree 2 the symmetric
    three-point rule and higher degrees use the conical product of a Gauss-Jacobi rule (collapsing
    weight (1-s)) with a Gauss-Legendre rule, which has positive weights and n^2 points for
    exactness degree 2n-1. The conical rules are not symmetric: their points cluster at the
    collapsed vertex and are not invariant under permutation of the vertices. Exactness does not
    depend on the vertex order, so results agree with a symmetric rule of the same degree up to
    rounding on polynomial integrands only.

    Edge rules are Gauss-Legendre rules on the parameter interval [0, 1] with weights summing to one.
"""

from dataclasses import dataclass
from functools import lru_cache
import numpy as np
from scipy import special

__author__ = 'Thermodarcy developers'

SUPPORTED_DEGREES = tuple(range(1, 21))
DEFAULT_DEGREE = 19


class QuadratureError(ValueError):
    """Raised when a quadrature rule of the requested degree is not available."""


@dataclass(frozen=True)
class QuadratureRule:
    """
    Quadrature rule on the reference triangle.

    `points` are barycentric coordinates (nq x 3),
    `weights` sum to one,
    `degree` is the polynomial exactness degree.
    """

    points: np.ndarray
    weights: np.ndarray
    degree: int

    def __len__(self):
        return len(self.weights)

    def physical_points(self, coordinates: np.ndarray) -> np.ndarray:
        """Map the rule to triangles with vertex `coordinates` (n x 3 x 2), return (n x nq x 2)."""
        return np.einsum('qi,kid->kqd', self.points, coordinates)


@dataclass(frozen=True)
class EdgeRule:
    """Gauss-Legendre rule on [0, 1]: `points` are parameters, `weights` sum to one."""

    points: np.ndarray
    weights: np.ndarray

    @property
    def degree(self) -> int:
        return 2 * len(self.points) - 1

    def __len__(self):
        return len(self.weights)


def _conical_product(degree: int):
    n = (degree + 2) // 2
    jacobi_nodes, jacobi_weights = special.roots_jacobi(n, 1.0, 0.0)
    legendre_nodes, legendre_weights = special.roots_legendre(n)
    s = (1.0 + jacobi_nodes) / 2.0
    t = (1.0 + legendre_nodes) / 2.0
    lambda1 = np.repeat(s, n)
    lambda2 = np.outer(1.0 - s, t).ravel()
    # integral over the reference triangle, normalized by its area 1/2
    weights = np.outer(jacobi_weights / 4.0, legendre_weights / 2.0).ravel() * 2.0
    points = np.column_stack((1.0 - lambda1 - lambda2, lambda1, lambda2))
    return points, weights


@lru_cache(maxsize=None)
def quadrature_rule(degree: int = DEFAULT_DEGREE) -> QuadratureRule:
    """
    Return a positive-weight triangle rule exact for polynomials up to `degree`.

    Degrees above 2 give the non-symmetric conical product with ((degree + 2) // 2)^2 points.

    Raise QuadratureError if the degree is not supported.
    """
    if degree not in SUPPORTED_DEGREES:
        raise QuadratureError('Quadrature degree %s is not supported, choose from %s'
                              % (degree, ', '.join(str(d) for d in SUPPORTED_DEGREES)))
    if degree == 1:
        points = np.full((1, 3), 1.0 / 3.0)
        weights = np.ones(1)
    elif degree == 2:
        points = np.array([[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0],
                           [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
                           [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0]])
        weights = np.full(3, 1.0 / 3.0)
    else:
        points, weights = _conical_product(degree)
    points.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(points, weights, degree)


@lru_cache(maxsize=None)
def edge_rule(num_points: int = 10) -> EdgeRule:
    """Return the Gauss-Legendre rule with `num_points` points on [0, 1]."""
    if num_points < 1:
        raise QuadratureError('Edge rule needs at least one point')
    nodes, weights = special.roots_legendre(num_points)
    points = (1.0 + nodes) / 2.0
    weights = weights / 2.0
    points.setflags(write=False)
    weights.setflags(write=False)
    return EdgeRule(points, weights)


def edge_rule_for_degree(degree: int) -> EdgeRule:
    """Return the smallest Gauss-Legendre rule exact up to `degree`."""
    return edge_rule(max(1, (degree + 2) // 2))
