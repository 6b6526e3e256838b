"""This package contains conforming triangulations, their refinement and point location."""

__all__ = [
    'Mesh',
    'MeshInvalidError',
    'PointLocationError',
    'PointClass',
    'PointLocation',
    'build_mesh',
    'locate',
    'locate_all',
    'bisect',
    'refine_uniform',
    'RefinementError',
    'Patch',
    'patches',
    'edge_patch',
    'vertex_patch_union',
    'criss_cross_square',
    'criss_cross_l_shape',
    'read_mesh',
    'write_mesh',
    'write_vtk_mesh',
    'read_vtk_mesh',
    'to_meshio',
]
__version__ = '1.0'
__author__ = 'Thermodarcy developers'

from .mesh import (
    Mesh,
    MeshInvalidError,
    PointLocationError,
    PointClass,
    PointLocation,
    build_mesh,
    locate,
    locate_all,
)
from .refinement import bisect, refine_uniform, RefinementError
from .patches import Patch, patches, edge_patch, vertex_patch_union
from .generators import criss_cross_square, criss_cross_l_shape
from .io import read_mesh, write_mesh, write_vtk_mesh, read_vtk_mesh, to_meshio
