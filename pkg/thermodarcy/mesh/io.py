"""
This module provides reading and writing of meshes.

Plain-text mesh format:
    nv nt
    x y          (nv vertex lines)
    i j k        (nt triangle lines, 0-based, counterclockwise)

Meshes can also be written to and re-imported from the legacy VTK unstructured-grid format.
"""

import logging
import numpy as np
import meshio
from .mesh import Mesh, MeshInvalidError

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)


def write_mesh(mesh: Mesh, path: str) -> None:
    """Write `mesh` to `path` in the plain-text mesh format."""
    with open(path, 'w') as w_file:
        w_file.write('{} {}\n'.format(mesh.num_vertices, mesh.num_triangles))
        for x, y in mesh.vertices:
            w_file.write('{!r} {!r}\n'.format(float(x), float(y)))
        for i, j, k in mesh.triangles:
            w_file.write('{} {} {}\n'.format(i, j, k))
    log.info('Mesh written to <%s>', path)


def read_mesh(path: str) -> Mesh:
    """
    Read a Mesh from `path` in the plain-text mesh format.

    Raise MeshInvalidError if the file is malformed or the mesh is invalid.
    """
    with open(path) as r_file:
        lines = [line.split() for line in r_file if line.strip()]
    try:
        nv, nt = (int(value) for value in lines[0])
        vertices = np.array([[float(value) for value in line] for line in lines[1:nv + 1]])
        triangles = np.array([[int(value) for value in line] for line in lines[nv + 1:nv + 1 + nt]])
    except (ValueError, IndexError) as err:
        raise MeshInvalidError('Malformed mesh file <%s>: %s' % (path, err))
    if len(vertices) != nv or len(triangles) != nt:
        raise MeshInvalidError('Mesh file <%s> declares %d vertices and %d triangles, found %d and %d'
                               % (path, nv, nt, len(vertices), len(triangles)))
    log.info('Mesh read from <%s>', path)
    return Mesh(vertices, triangles)


def to_meshio(mesh: Mesh, point_data: dict = None, cell_data: dict = None) -> meshio.Mesh:
    """Convert `mesh` with optional per-vertex and per-triangle arrays to a meshio.Mesh."""
    points = np.column_stack((mesh.vertices, np.zeros(mesh.num_vertices)))
    cells = {name: [np.asarray(values)] for name, values in (cell_data or {}).items()}
    return meshio.Mesh(points, [('triangle', np.asarray(mesh.triangles))],
                       point_data=dict(point_data or {}), cell_data=cells)


def write_vtk_mesh(mesh: Mesh, path: str) -> None:
    """Write `mesh` to `path` as a legacy VTK unstructured grid."""
    meshio.write(path, to_meshio(mesh), file_format='vtk', binary=False)
    log.info('VTK mesh written to <%s>', path)


def read_vtk_mesh(path: str) -> Mesh:
    """Re-import a Mesh from a legacy VTK file written by `write_vtk_mesh`."""
    data = meshio.read(path, file_format='vtk')
    triangles = data.cells_dict.get('triangle')
    if triangles is None:
        raise MeshInvalidError('VTK file <%s> contains no triangle cells' % path)
    return Mesh(data.points[:, :2], triangles)
