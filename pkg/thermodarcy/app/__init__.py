"""
This package contains the problem library, run configuration and exporters.

The CLI commands live in `thermodarcy.app.cli` and the run execution in `thermodarcy.app.sweep`;
both are imported explicitly, this package only exposes the data layer.
"""

__all__ = [
    'ProblemSpec',
    'ProblemInvalidError',
    'Domain',
    'builtin_problem',
    'show',
    'get',
    'RunConfig',
    'ConfigInvalidError',
    'CONVERGENCE_FILENAME',
    'CSV_HEADER',
    'ConvergenceTable',
    'read_convergence',
    'fitted_slopes',
    'slopes_outside',
    'SLOPE_RANGE',
    'export_vtk',
    'export_mesh_vtk',
]
__version__ = '1.0'
__author__ = 'Thermodarcy developers'

from .problems import ProblemSpec, ProblemInvalidError, Domain, builtin_problem, show, get
from .config import RunConfig, ConfigInvalidError
from .export import (
    CONVERGENCE_FILENAME,
    CSV_HEADER,
    ConvergenceTable,
    read_convergence,
    fitted_slopes,
    slopes_outside,
    SLOPE_RANGE,
    export_vtk,
    export_mesh_vtk,
)
