"""
This module contains the exporters of run results.

    convergence.csv - one row per adaptive iteration:
        iter,ndof,est_heat,est_curl,est_pressure,est_total,picard_iters,elements
        with a trailing est_osc column when the data oscillation is reported
    legacy VTK      - point data T, cell data u (at barycenters), p and the indicators
"""

import os
import logging
from typing import Dict, List, Tuple
import numpy as np
from thermodarcy.mesh import Mesh, to_meshio, write_vtk_mesh
from thermodarcy.fem import rt0_coefficients
from thermodarcy.assembly import CoupledState
from thermodarcy.estimator import IndicatorField

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)

CONVERGENCE_FILENAME = 'convergence.csv'
CSV_HEADER = ('iter', 'ndof', 'est_heat', 'est_curl', 'est_pressure', 'est_total', 'picard_iters', 'elements')
ESTIMATOR_COLUMNS = ('est_heat', 'est_curl', 'est_pressure', 'est_total')
OSCILLATION_COLUMN = 'est_osc'
SLOPE_RANGE = (-0.65, -0.35)


def format_row(record, oscillation: bool = False) -> str:
    """Format an AdaptiveRecord as a CSV row; floats keep all 17 significant digits."""
    row = '{},{},{},{},{},{},{},{}'.format(
        record.iteration, record.ndof,
        *('%.17g' % getattr(record, column) for column in ESTIMATOR_COLUMNS),
        record.picard_iters, record.elements)
    if oscillation:
        row += ',%.17g' % record.est_osc
    return row + '\n'


class ConvergenceTable:
    """
    Convergence CSV opened at `path`; rows are appended and flushed one at a time.

    With `oscillation` the rows carry the data oscillation in a trailing est_osc column.
    """

    def __init__(self, path: str, oscillation: bool = False):
        self.__path = path
        self.__oscillation = oscillation
        header = CSV_HEADER + ((OSCILLATION_COLUMN,) if oscillation else ())
        self.__out = open(path, 'w')
        self.__out.write(','.join(header) + '\n')
        self.__out.flush()

    def append(self, record) -> None:
        self.__out.write(format_row(record, self.__oscillation))
        self.__out.flush()

    def close(self) -> None:
        if not self.__out.closed:
            self.__out.close()
            log.info('Convergence table written to <%s>', self.__path)


def read_convergence(path: str) -> List[Dict[str, float]]:
    """Read a convergence CSV into a list of rows keyed by the header columns."""
    floats = ESTIMATOR_COLUMNS + (OSCILLATION_COLUMN,)
    with open(path) as r_file:
        header = r_file.readline().strip().split(',')
        rows = []
        for line in r_file:
            if line.strip():
                values = line.strip().split(',')
                rows.append({key: (float(value) if key in floats else int(value))
                             for key, value in zip(header, values)})
    return rows


def fitted_slopes(rows: List[Dict[str, float]], last: int = 10) -> Dict[str, float]:
    """Return least-squares slopes of log(estimator) against log(ndof) over the `last` rows."""
    rows = rows[-last:]
    if len(rows) < 2:
        return {}
    ndof = np.log([row['ndof'] for row in rows])
    return {column: float(np.polyfit(ndof, np.log([row[column] for row in rows]), 1)[0])
            for column in ESTIMATOR_COLUMNS}


def slopes_outside(slopes: Dict[str, float], bounds: Tuple[float, float] = SLOPE_RANGE) -> List[str]:
    """Return the columns of `slopes` whose value lies outside the closed interval `bounds`."""
    low, high = bounds
    return [column for column, slope in slopes.items() if not low <= slope <= high]


def export_mesh_vtk(mesh: Mesh, path: str) -> None:
    """Write the bare mesh as a legacy VTK file."""
    write_vtk_mesh(mesh, path)


def export_vtk(mesh: Mesh, state: CoupledState, indicators: IndicatorField, path: str) -> None:
    """
    Write `state` and `indicators` on `mesh` as a legacy VTK unstructured grid.

    Raise OSError if `path` is not writable.
    """
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise OSError('Directory <%s> does not exist' % directory)
    _, center = rt0_coefficients(mesh, state.edge_velocity())
    cell_data = {
        'u': np.column_stack((center, np.zeros(mesh.num_triangles))),
        'p': np.asarray(state.pressure, dtype=float),
    }
    if indicators is not None:
        cell_data.update(indicators.as_cell_data())
    data = to_meshio(mesh, point_data={'T': state.nodal_temperature()}, cell_data=cell_data)
    data.write(path, file_format='vtk', binary=False)
    log.info('Solution written to <%s>', path)
