"""This module contains element and edge patches (stars) of a Mesh."""

from dataclasses import dataclass
from typing import List, Tuple
import numpy as np
from scipy import sparse as sp
from .mesh import Mesh

__author__ = 'Thermodarcy developers'


@dataclass(frozen=True)
class Patch:
    """
    Neighbourhood of a single triangle.

    `center` is the triangle id,
    `edge_patch` (N_K) holds the center and all triangles sharing an edge with it,
    `vertex_patch` (N_K*) holds the center and all triangles sharing a vertex with it.
    """

    center: int
    edge_patch: Tuple[int, ...]
    vertex_patch: Tuple[int, ...]


def _incidence(rows: np.ndarray, shape) -> sp.csr_matrix:
    nt = rows.shape[0]
    data = np.ones(rows.size, dtype=np.int64)
    return sp.csr_matrix((data, (np.repeat(np.arange(nt), rows.shape[1]), rows.ravel())), shape=shape)


def patches(mesh: Mesh) -> List[Patch]:
    """Return the Patch of every triangle of `mesh`, ordered by triangle id."""
    nt = mesh.num_triangles
    by_edge = _incidence(mesh.triangle_edges, (nt, mesh.num_edges))
    by_vertex = _incidence(mesh.triangles, (nt, mesh.num_vertices))
    edge_adjacency = (by_edge @ by_edge.T).tocsr()
    vertex_adjacency = (by_vertex @ by_vertex.T).tocsr()
    edge_adjacency.sort_indices()
    vertex_adjacency.sort_indices()

    result = []
    for element in range(nt):
        edge_row = edge_adjacency.indices[edge_adjacency.indptr[element]:edge_adjacency.indptr[element + 1]]
        vertex_row = vertex_adjacency.indices[vertex_adjacency.indptr[element]:vertex_adjacency.indptr[element + 1]]
        result.append(Patch(element, tuple(int(k) for k in edge_row), tuple(int(k) for k in vertex_row)))
    return result


def edge_patch(mesh: Mesh, edge: int) -> Tuple[int, ...]:
    """Return N_γ, the triangles having `edge` as a side."""
    return tuple(int(k) for k in mesh.edge_triangles[edge] if k >= 0)


def vertex_patch_union(mesh: Mesh, elements) -> np.ndarray:
    """Return sorted ids of all triangles sharing a vertex with any of `elements` (elements included)."""
    touched = np.zeros(mesh.num_vertices, dtype=bool)
    touched[mesh.triangles[np.asarray(list(elements), dtype=np.int64)].ravel()] = True
    return np.flatnonzero(touched[mesh.triangles].any(axis=1))
