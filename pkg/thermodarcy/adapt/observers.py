"""This module contains IterationObserver interface and the observers writing run output."""

import os
import logging
from abc import ABC, abstractmethod
from thermodarcy.mesh import Mesh
from thermodarcy.assembly import CoupledState
from thermodarcy.estimator import IndicatorField
from thermodarcy.app.export import CONVERGENCE_FILENAME, ConvergenceTable, export_vtk, export_mesh_vtk

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)


class IterationObserver(ABC):
    """
    An abstract IterationObserver class an interface that is notified after every iteration of the
    adaptive loop with the iteration record, the mesh, the converged state and its indicators.

    Class implements mandatory methods of context manager interface so can be (and is recommended)
    to use with `with` statement. This way one can be sure that opened files are closed.

    `output_dir` is a directory where results will be written,
    `kwargs` are optional key arguments special to concrete implementation.
    """

    def __init__(self, output_dir: str, **kwargs):
        """Initialize IterationObserver."""

    @abstractmethod
    def notify(self, record, mesh: Mesh, state: CoupledState, indicators: IndicatorField) -> None:
        """Process results of a finished iteration."""

    @abstractmethod
    def done(self) -> None:
        """Indicate that the loop finished and clean up context."""

    @abstractmethod
    def __enter__(self):
        """Return self."""

    @abstractmethod
    def __exit__(self, exc_type, exc_value, traceback):
        """Safely clean-up context."""


class ConvergenceWriter(IterationObserver):
    """
    IterationObserver implementation that appends one row per iteration to `convergence.csv`.

    Rows are flushed after every iteration so a failed run leaves the completed iterations on disk.

    Special key arguments:
    [optional] `filename` of the table (default convergence.csv),
    [optional] `oscillation` adds the est_osc column (default False).
    """

    def __init__(self, output_dir: str, **kwargs):
        os.makedirs(output_dir, exist_ok=True)
        self.__path = os.path.join(output_dir, kwargs.get('filename', CONVERGENCE_FILENAME))
        self.__table = ConvergenceTable(self.__path, bool(kwargs.get('oscillation', False)))
        log.info("ConvergenceWriter created: %s", self.__path)

    @property
    def path(self) -> str:
        return self.__path

    def notify(self, record, mesh: Mesh, state: CoupledState, indicators: IndicatorField) -> None:
        self.__table.append(record)

    def done(self) -> None:
        self.__table.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.__table.close()


class VtkWriter(IterationObserver):
    """
    IterationObserver implementation that writes `mesh_XXXX.vtk` and `solution_XXXX.vtk` files.

    Special key arguments:
    [optional] `every` writes only every n-th iteration (default 1).
    """

    def __init__(self, output_dir: str, **kwargs):
        os.makedirs(output_dir, exist_ok=True)
        self.__output_dir = output_dir
        self.__every = max(1, int(kwargs.get('every', 1)))
        self.__written = []

    @property
    def written(self) -> list:
        return list(self.__written)

    def notify(self, record, mesh: Mesh, state: CoupledState, indicators: IndicatorField) -> None:
        if record.iteration % self.__every:
            return
        mesh_path = os.path.join(self.__output_dir, 'mesh_{:04d}.vtk'.format(record.iteration))
        solution_path = os.path.join(self.__output_dir, 'solution_{:04d}.vtk'.format(record.iteration))
        export_mesh_vtk(mesh, mesh_path)
        export_vtk(mesh, state, indicators, solution_path)
        self.__written.extend((mesh_path, solution_path))

    def done(self) -> None:
        log.info("VtkWriter wrote %d files into %s", len(self.__written), self.__output_dir)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        pass
