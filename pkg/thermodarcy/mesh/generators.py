"""
This module contains generators of the initial meshes.

Both generators produce criss-cross meshes: every square cell of a uniform grid is split by its two
diagonals into four right isosceles triangles meeting at the cell center.
"""

import logging
from typing import Iterable, Tuple
import numpy as np
from .mesh import Mesh

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)


def _criss_cross(cells: Iterable[Tuple[int, int]], origin: Tuple[float, float], size: float) -> Mesh:
    """Build a criss-cross mesh of the given grid `cells` with cell `size` starting at `origin`."""
    index = {}
    vertices = []
    triangles = []

    def vertex(point):
        if point not in index:
            index[point] = len(vertices)
            vertices.append((origin[0] + point[0] * size, origin[1] + point[1] * size))
        return index[point]

    for i, j in cells:
        corners = [vertex((2 * i, 2 * j)), vertex((2 * i + 2, 2 * j)),
                   vertex((2 * i + 2, 2 * j + 2)), vertex((2 * i, 2 * j + 2))]
        center = vertex((2 * i + 1, 2 * j + 1))
        for k in range(4):
            triangles.append((corners[k], corners[(k + 1) % 4], center))
    return Mesh(np.array(vertices), np.array(triangles))


def criss_cross_square(n: int = 4, lower: Tuple[float, float] = (0.0, 0.0), side: float = 1.0) -> Mesh:
    """Return a criss-cross mesh of the square [lower, lower + side]^2 with n x n cells."""
    if n < 1:
        raise ValueError('Number of cells per side must be positive')
    cells = [(i, j) for j in range(n) for i in range(n)]
    mesh = _criss_cross(cells, lower, side / (2.0 * n))
    log.info('Generated criss-cross square: %s', mesh)
    return mesh


def criss_cross_l_shape(n: int = 2) -> Mesh:
    """
    Return a criss-cross mesh of the L-shaped domain (-1,1)^2 without [0,1)x[-1,0).

    `n` is the number of cells per unit length, each of the three quadrants gets n x n cells.
    """
    if n < 1:
        raise ValueError('Number of cells per unit length must be positive')
    cells = [(i, j) for j in range(2 * n) for i in range(2 * n) if not (i >= n and j < n)]
    mesh = _criss_cross(cells, (-1.0, -1.0), 1.0 / (2.0 * n))
    log.info('Generated criss-cross L-shape: %s', mesh)
    return mesh
