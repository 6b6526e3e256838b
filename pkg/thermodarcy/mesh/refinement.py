"""
This module contains longest-edge bisection of a Mesh.

    Marked triangles are bisected through their refinement edge (the longest one). Conformity is
    restored by a closure: every triangle owning a marked edge gets its own refinement edge marked,
    until no edge is added. Each triangle with marked edges is then split by bisecting its
    refinement edge first and the remaining marked edges of the children afterwards, so a single
    triangle yields 2, 3 or 4 children. Existing vertices never move.
"""

import logging
from typing import Iterable, Optional
import numpy as np
from .mesh import Mesh

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)

MIN_ANGLE_FLOOR = 5.0
DEPTH_CAP_FACTOR = 100


class RefinementError(RuntimeError):
    """Raised when the conformity closure does not terminate or refinement degrades the mesh."""


def _close_marking(mesh: Mesh, marked: np.ndarray, depth_cap: int) -> np.ndarray:
    """Return edge flags of all edges that must be bisected to keep the mesh conforming."""
    rows = np.arange(mesh.num_triangles)
    refinement = mesh.triangle_edges[rows, mesh.refinement_edges]
    flags = np.zeros(mesh.num_edges, dtype=bool)
    flags[refinement[marked]] = True
    sweep = 0
    while True:
        touched = flags[mesh.triangle_edges].any(axis=1)
        missing = refinement[touched & ~flags[refinement]]
        if not len(missing):
            return flags
        flags[missing] = True
        sweep += 1
        if sweep > depth_cap:
            raise RefinementError('Bisection closure exceeded depth cap %d, refinement edges form a cycle' % depth_cap)


def bisect(mesh: Mesh, marked: Iterable[int], depth_cap: Optional[int] = None,
           min_angle_floor: float = MIN_ANGLE_FLOOR) -> Mesh:
    """
    Refine `mesh` by longest-edge bisection of `marked` triangles and return the new Mesh.

    `marked` is a collection of triangle ids,
    `depth_cap` limits the number of closure sweeps (100 * number of marked triangles by default),
    `min_angle_floor` is the smallest interior angle (degrees) the refined mesh may have.

    The returned mesh carries `parents`, mapping every new triangle to the triangle it comes from.
    Raise RefinementError if the closure does not terminate or the angle floor is violated.
    """
    marked = np.unique(np.asarray(list(marked), dtype=np.int64))
    if len(marked) and (marked[0] < 0 or marked[-1] >= mesh.num_triangles):
        raise ValueError('Marked triangles must be in range [0, %d)' % mesh.num_triangles)
    if depth_cap is None:
        depth_cap = DEPTH_CAP_FACTOR * max(len(marked), 1)

    flags = _close_marking(mesh, marked, depth_cap)
    split_edges = np.flatnonzero(flags)
    midpoint = -np.ones(mesh.num_edges, dtype=np.int64)
    midpoint[split_edges] = mesh.num_vertices + np.arange(len(split_edges))
    ends = mesh.edges[split_edges]
    vertices = np.vstack((mesh.vertices, 0.5 * (mesh.vertices[ends[:, 0]] + mesh.vertices[ends[:, 1]])))

    # rotate every triangle so that its refinement edge is opposite to local vertex 0
    nt = mesh.num_triangles
    rows = np.arange(nt)[:, None]
    rotation = (mesh.refinement_edges[:, None] + np.arange(3)[None, :]) % 3
    v0, v1, v2 = mesh.triangles[rows, rotation].T
    e0, e1, e2 = mesh.triangle_edges[rows, rotation].T
    mid = midpoint[e0]
    # midpoints of (v2, v0) and (v0, v1)
    mid_left = midpoint[e1]
    mid_right = midpoint[e2]
    split = mid >= 0

    children = np.empty((nt, 4, 3), dtype=np.int64)
    valid = np.zeros((nt, 4), dtype=bool)
    children[:, 0] = mesh.triangles
    valid[:, 0] = True

    # first child (v0, v1, m), itself split through the midpoint of (v0, v1) when marked
    halves = split & (mid_right >= 0)
    whole = split & (mid_right < 0)
    children[whole, 0] = np.column_stack((v0, v1, mid))[whole]
    children[halves, 0] = np.column_stack((mid, v0, mid_right))[halves]
    children[halves, 1] = np.column_stack((mid, mid_right, v1))[halves]
    valid[halves, 1] = True

    # second child (v0, m, v2), itself split through the midpoint of (v2, v0) when marked
    halves = split & (mid_left >= 0)
    whole = split & (mid_left < 0)
    children[whole, 2] = np.column_stack((v0, mid, v2))[whole]
    children[halves, 2] = np.column_stack((mid, v2, mid_left))[halves]
    children[halves, 3] = np.column_stack((mid, mid_left, v0))[halves]
    valid[split, 2] = True
    valid[halves, 3] = True

    triangles = children[valid]
    parents = np.repeat(np.arange(nt), valid.sum(axis=1))
    refined = Mesh(vertices, triangles, parents=parents)

    angle = refined.min_angle()
    if angle < min_angle_floor:
        raise RefinementError('Refined mesh has minimal angle %.3f deg below the floor %.3f deg' % (angle, min_angle_floor))
    log.info('Bisected %d marked of %d triangles: %d new vertices, %d triangles',
             len(marked), nt, len(split_edges), refined.num_triangles)
    return refined


def refine_uniform(mesh: Mesh, times: int = 1) -> Mesh:
    """Bisect all triangles of `mesh` `times` times."""
    for _ in range(times):
        mesh = bisect(mesh, range(mesh.num_triangles))
    return mesh
