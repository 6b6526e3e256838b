"""
This module contains the Mesh class and point location on it.

    Mesh is a conforming triangulation of a polygonal domain. It is built from vertex coordinates
    and counterclockwise triangles, everything else (edges, incidences, orientation signs,
    boundary flags, refinement edges) is derived upon construction. A Mesh is immutable, all
    derived arrays are read-only and refinement always produces a new Mesh.

    Local numbering: local edge `j` of a triangle is the edge opposite to its local vertex `j`,
    i.e. the edge (t[j+1], t[j+2]) taken cyclically. Global edges are stored as sorted vertex pairs
    and are oriented from the lower to the higher vertex index; the global unit normal of an edge
    is its tangent rotated clockwise. The orientation sign of a (triangle, edge) pair is +1 if the
    global normal is the outward normal of the triangle, -1 otherwise.
"""

import logging
from enum import IntEnum
from typing import List, NamedTuple, Optional
import numpy as np

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)

# Tolerance on barycentric coordinates used to classify points
GEOMETRY_TOLERANCE = 1e-12
# Relative tolerance used when comparing edge lengths of a single triangle
LENGTH_TIE_TOLERANCE = 1e-12
# Edges processed at once while searching for hanging vertices
_HANGING_CHUNK = 256


class MeshInvalidError(ValueError):
    """Raised when the triangulation is degenerate or not conforming."""


class PointLocationError(ValueError):
    """Raised when a point does not belong to the closure of the meshed domain."""


class PointClass(IntEnum):
    """Enumeration of point positions with respect to a closed triangle."""

    INTERIOR = 1
    ON_EDGE = 2
    AT_VERTEX = 3

    def __str__(self):
        return str(self.name)


class PointLocation(NamedTuple):
    """Position of a point inside a single closed triangle."""

    element: int
    coordinates: np.ndarray
    kind: PointClass


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


class Mesh:
    """
    Conforming triangulation of a polygonal domain.

    `vertices` is an array of 2D coordinates,
    `triangles` is an array of vertex index triples in counterclockwise order,
    `parents` is an optional array mapping each triangle to the triangle of a coarser mesh it was
    obtained from (kept for diagnostics after refinement).

    Raise MeshInvalidError if a triangle is degenerate or clockwise, if a vertex is hanging, if an
    edge is shared by more than two triangles or if input indices are invalid.
    """

    def __init__(self, vertices, triangles, parents: Optional[np.ndarray] = None):
        vertices = np.array(vertices, dtype=float)
        triangles = np.array(triangles, dtype=np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 2:
            raise MeshInvalidError('Vertices must be an array of 2D coordinates, got shape %s' % (vertices.shape,))
        if triangles.ndim != 2 or triangles.shape[1] != 3 or not len(triangles):
            raise MeshInvalidError('Triangles must be a nonempty array of index triples, got shape %s'
                                   % (triangles.shape,))
        if triangles.min() < 0 or triangles.max() >= len(vertices):
            raise MeshInvalidError('Triangle refers to a vertex out of range [0, %d)' % len(vertices))
        unused = np.setdiff1d(np.arange(len(vertices)), triangles)
        if len(unused):
            raise MeshInvalidError('Vertex %d is not used by any triangle' % unused[0])

        self._vertices = _readonly(vertices)
        self._triangles = _readonly(triangles)
        self._parents = None if parents is None else _readonly(np.array(parents, dtype=np.int64))

        self._init_geometry()
        self._init_topology()
        self._check_hanging_vertices()
        log.debug('Mesh created: %s', self)

    def _init_geometry(self):
        p0, p1, p2 = (self._vertices[self._triangles[:, i]] for i in range(3))
        area2 = _cross(p1 - p0, p2 - p0)
        degenerate = np.flatnonzero(area2 <= 0.0)
        if len(degenerate):
            raise MeshInvalidError('Triangle %d is degenerate or clockwise (signed area %g)'
                                   % (degenerate[0], area2[degenerate[0]] / 2.0))
        self._areas = _readonly(area2 / 2.0)
        self._barycenters = _readonly((p0 + p1 + p2) / 3.0)

    def _init_topology(self):
        triangles = self._triangles
        nt = len(triangles)
        start = triangles[:, [1, 2, 0]]
        end = triangles[:, [2, 0, 1]]
        pairs = np.sort(np.stack((start, end), axis=-1), axis=-1).reshape(-1, 2)
        edges, inverse, counts = np.unique(pairs, axis=0, return_inverse=True, return_counts=True)
        inverse = inverse.reshape(-1)
        if counts.max() > 2:
            raise MeshInvalidError('Edge %s is shared by more than two triangles' % edges[np.argmax(counts)])

        triangle_edges = inverse.reshape(nt, 3)
        signs = np.where(start < end, 1, -1)

        # edge -> triangles, the smaller triangle id first
        flat_edges = inverse
        flat_triangles = np.repeat(np.arange(nt), 3)
        order = np.lexsort((flat_triangles, flat_edges))
        sorted_edges = flat_edges[order]
        sorted_triangles = flat_triangles[order]
        first = np.ones(len(order), dtype=bool)
        first[1:] = sorted_edges[1:] != sorted_edges[:-1]
        edge_triangles = -np.ones((len(edges), 2), dtype=np.int64)
        edge_triangles[sorted_edges[first], 0] = sorted_triangles[first]
        edge_triangles[sorted_edges[~first], 1] = sorted_triangles[~first]

        boundary_edges = edge_triangles[:, 1] < 0
        interior = np.flatnonzero(~boundary_edges)
        if len(interior):
            sign_plus = self._local_sign(signs, triangle_edges, edge_triangles[interior, 0], interior)
            sign_minus = self._local_sign(signs, triangle_edges, edge_triangles[interior, 1], interior)
            overlapping = np.flatnonzero(sign_plus == sign_minus)
            if len(overlapping):
                raise MeshInvalidError('Triangles %s overlap along edge %s'
                                       % (edge_triangles[interior[overlapping[0]]], edges[interior[overlapping[0]]]))

        boundary_vertices = np.zeros(len(self._vertices), dtype=bool)
        boundary_vertices[edges[boundary_edges].ravel()] = True

        edge_lengths = np.linalg.norm(self._vertices[edges[:, 1]] - self._vertices[edges[:, 0]], axis=1)
        local_lengths = edge_lengths[triangle_edges]
        longest = local_lengths.max(axis=1)
        candidates = local_lengths >= (longest * (1.0 - LENGTH_TIE_TOLERANCE))[:, None]
        refinement_edges = np.argmin(np.where(candidates, triangle_edges, np.iinfo(np.int64).max), axis=1)

        self._edges = _readonly(edges)
        self._triangle_edges = _readonly(triangle_edges)
        self._triangle_edge_signs = _readonly(signs)
        self._edge_triangles = _readonly(edge_triangles)
        self._boundary_edges = _readonly(boundary_edges)
        self._boundary_vertices = _readonly(boundary_vertices)
        self._edge_lengths = _readonly(edge_lengths)
        self._diameters = _readonly(longest)
        self._refinement_edges = _readonly(refinement_edges)

    @staticmethod
    def _local_sign(signs, triangle_edges, elements, edges):
        local = np.argmax(triangle_edges[elements] == edges[:, None], axis=1)
        return signs[elements, local]

    def _check_hanging_vertices(self):
        """Search vertices lying inside an edge that is seen by a single triangle."""
        boundary = self._edges[self._boundary_edges]
        candidates = np.unique(boundary)
        points = self._vertices[candidates]
        for chunk in range(0, len(boundary), _HANGING_CHUNK):
            segment = boundary[chunk:chunk + _HANGING_CHUNK]
            start = self._vertices[segment[:, 0]][:, None, :]
            direction = self._vertices[segment[:, 1]][:, None, :] - start
            relative = points[None, :, :] - start
            length2 = np.sum(direction ** 2, axis=-1)
            projection = np.sum(relative * direction, axis=-1)
            distance = np.abs(_cross(direction, relative))
            inside = ((distance <= GEOMETRY_TOLERANCE * length2)
                      & (projection > GEOMETRY_TOLERANCE * length2)
                      & (projection < (1.0 - GEOMETRY_TOLERANCE) * length2))
            if inside.any():
                edge, vertex = np.argwhere(inside)[0]
                raise MeshInvalidError('Vertex %d is hanging on edge %s'
                                       % (candidates[vertex], tuple(segment[edge])))

    def __str__(self):
        return 'Mesh with {} vertices, {} edges and {} triangles'.format(
            self.num_vertices, self.num_edges, self.num_triangles)

    def __repr__(self):
        return self.__str__()

    @property
    def vertices(self) -> np.ndarray:
        """Get the vertex coordinates (nv x 2)."""
        return self._vertices

    @property
    def triangles(self) -> np.ndarray:
        """Get the counterclockwise triangles (nt x 3)."""
        return self._triangles

    @property
    def edges(self) -> np.ndarray:
        """Get the edges as sorted vertex pairs (ne x 2)."""
        return self._edges

    @property
    def triangle_edges(self) -> np.ndarray:
        """Get the global edge index of each local edge (nt x 3)."""
        return self._triangle_edges

    @property
    def triangle_edge_signs(self) -> np.ndarray:
        """Get the orientation sign of each (triangle, local edge) pair (nt x 3)."""
        return self._triangle_edge_signs

    @property
    def edge_triangles(self) -> np.ndarray:
        """Get the triangles sharing each edge (ne x 2), -1 marks a missing second triangle."""
        return self._edge_triangles

    @property
    def boundary_edges(self) -> np.ndarray:
        """Get the boundary flags of edges."""
        return self._boundary_edges

    @property
    def boundary_vertices(self) -> np.ndarray:
        """Get the boundary flags of vertices."""
        return self._boundary_vertices

    @property
    def refinement_edges(self) -> np.ndarray:
        """Get the local index of the refinement (longest) edge of each triangle."""
        return self._refinement_edges

    @property
    def parents(self) -> Optional[np.ndarray]:
        """Get the parent triangle of each triangle, None for a mesh that was not refined."""
        return self._parents

    @property
    def areas(self) -> np.ndarray:
        """Get the triangle areas |K|."""
        return self._areas

    @property
    def diameters(self) -> np.ndarray:
        """Get the triangle diameters h_K."""
        return self._diameters

    @property
    def edge_lengths(self) -> np.ndarray:
        """Get the edge lengths |γ|."""
        return self._edge_lengths

    @property
    def barycenters(self) -> np.ndarray:
        """Get the triangle barycenters."""
        return self._barycenters

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def num_triangles(self) -> int:
        return len(self._triangles)

    @property
    def area(self) -> float:
        """Get the area of the meshed domain."""
        return float(np.sum(self._areas))

    def triangle_coordinates(self, elements=None) -> np.ndarray:
        """Return vertex coordinates of the given (all by default) triangles, shape (n x 3 x 2)."""
        triangles = self._triangles if elements is None else self._triangles[elements]
        return self._vertices[triangles]

    def min_angle(self) -> float:
        """Return the smallest interior angle of all triangles in degrees."""
        coords = self.triangle_coordinates()
        smallest = np.pi
        for i in range(3):
            first = coords[:, (i + 1) % 3] - coords[:, i]
            second = coords[:, (i + 2) % 3] - coords[:, i]
            cosine = np.sum(first * second, axis=1) / (np.linalg.norm(first, axis=1) * np.linalg.norm(second, axis=1))
            smallest = min(smallest, float(np.min(np.arccos(np.clip(cosine, -1.0, 1.0)))))
        return np.degrees(smallest)

    def barycentric(self, point) -> np.ndarray:
        """Return barycentric coordinates of `point` with respect to every triangle (nt x 3)."""
        point = np.asarray(point, dtype=float)
        coords = self.triangle_coordinates()
        first = coords[:, 1] - coords[:, 0]
        second = coords[:, 2] - coords[:, 0]
        relative = point[None, :] - coords[:, 0]
        det = 2.0 * self._areas
        lambda1 = _cross(relative, second) / det
        lambda2 = _cross(first, relative) / det
        return np.column_stack((1.0 - lambda1 - lambda2, lambda1, lambda2))


def build_mesh(vertices, triangles) -> Mesh:
    """
    Build a Mesh from vertex coordinates and counterclockwise triangles.

    Raise MeshInvalidError for degenerate or nonconforming input.
    """
    mesh = Mesh(vertices, triangles)
    log.info('Built %s', mesh)
    return mesh


def _classify(coordinates: np.ndarray, tol: float):
    """Snap near-zero barycentric coordinates and classify the point."""
    coordinates = coordinates.copy()
    zero = np.abs(coordinates) <= tol
    count = int(np.count_nonzero(zero))
    if count >= 2:
        snapped = np.zeros(3)
        snapped[int(np.argmax(coordinates))] = 1.0
        return snapped, PointClass.AT_VERTEX
    if count == 1:
        coordinates[zero] = 0.0
        return coordinates / np.sum(coordinates), PointClass.ON_EDGE
    return coordinates, PointClass.INTERIOR


def locate_all(mesh: Mesh, point, tol: float = GEOMETRY_TOLERANCE) -> List[PointLocation]:
    """
    Return locations of `point` in every closed triangle containing it, ordered by triangle id.

    Raise PointLocationError if the point lies outside the closure of the domain.
    """
    coordinates = mesh.barycentric(point)
    hosts = np.flatnonzero(np.all(coordinates >= -tol, axis=1))
    if not len(hosts):
        raise PointLocationError('Point %s lies outside the meshed domain' % (tuple(point),))
    locations = []
    for element in hosts:
        snapped, kind = _classify(coordinates[element], tol)
        locations.append(PointLocation(int(element), snapped, kind))
    return locations


def locate(mesh: Mesh, point, tol: float = GEOMETRY_TOLERANCE) -> PointLocation:
    """
    Return the location of `point` in the triangle with the smallest id whose closure contains it.

    Classification is done on barycentric coordinates with tolerance `tol`.
    Raise PointLocationError if the point lies outside the closure of the domain.
    """
    return locate_all(mesh, point, tol)[0]
