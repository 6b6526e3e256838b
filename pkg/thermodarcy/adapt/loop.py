"""
This module contains the adaptive loop: solve, estimate, mark, refine.

Every iteration runs the Picard iteration on the current mesh, computes the indicators, records
the global estimators and bisects the marked triangles (maximum marking on the total indicator).
"""

import time
import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, List, Optional
import numpy as np
from thermodarcy.mesh import Mesh, bisect
from thermodarcy.fem import DofLayout, quadrature_rule, DEFAULT_DEGREE
from thermodarcy.assembly import CoupledState
from thermodarcy.solver import PicardReport, PicardNonConvergenceError, picard
from thermodarcy.estimator import IndicatorField, estimate
from .marking import mark, DEFAULT_FACTOR
from .observers import IterationObserver

if TYPE_CHECKING:
    from thermodarcy.app.problems import ProblemSpec

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdaptiveRecord:
    """Summary of one adaptive iteration."""

    iteration: int
    ndof: int
    est_heat: float
    est_curl: float
    est_pressure: float
    est_total: float
    picard_iters: int
    elements: int
    wall_time: float = 0.0
    est_osc: Optional[float] = None


@dataclass
class AdaptiveResult:
    """Records of all iterations with the final mesh, state and indicators."""

    records: List[AdaptiveRecord]
    mesh: Mesh
    state: CoupledState
    indicators: IndicatorField
    stagnated: bool = False
    marked: List[np.ndarray] = field(default_factory=list)


class AdaptiveRunError(RuntimeError):
    """Raised when the Picard iteration fails inside the loop; carries the partial records and its report."""

    def __init__(self, message: str, records: List[AdaptiveRecord], report: Optional[PicardReport] = None):
        super().__init__(message)
        self.records = records
        self.report = report


def run_adaptive(problem: 'ProblemSpec', p: float, iterations: int, mesh: Mesh = None,
                 tol: float = 1e-8, max_picard: int = 200, quad_degree: int = DEFAULT_DEGREE,
                 mark_factor: float = DEFAULT_FACTOR, max_ndof: int = None, oscillation: bool = False,
                 observers: Iterable[IterationObserver] = ()) -> AdaptiveResult:
    """
    Run `iterations` adaptive iterations of `problem` starting from `mesh` (the problem's initial
    mesh by default) with integrability index `p`.

    With `oscillation` the data oscillation is computed and recorded next to the estimators; it is
    reported only and never enters the marking.
    Stop early if the marking is empty (all indicators vanish) or the DOF count reaches `max_ndof`.
    Raise AdaptiveRunError carrying the finished records if the Picard iteration fails.
    """
    if iterations < 1:
        raise ValueError('Number of adaptive iterations must be at least 1, got %s' % iterations)
    mesh = mesh or problem.initial_mesh()
    rule = quadrature_rule(quad_degree)
    observers = list(observers)
    records = []
    marked_history = []
    stagnated = False
    state = indicators = None

    for iteration in range(1, iterations + 1):
        started = time.perf_counter()
        layout = DofLayout(mesh)
        try:
            state, report = picard(mesh, layout, problem, tol=tol, max_iter=max_picard, rule=rule)
        except PicardNonConvergenceError as error:
            raise AdaptiveRunError('Iteration %d: %s' % (iteration, error), records, error.report) from error
        indicators = estimate(mesh, state, problem, p, rule, oscillation=oscillation)
        record = AdaptiveRecord(
            iteration=iteration,
            ndof=layout.ndof,
            est_heat=indicators.heat_estimator,
            est_curl=indicators.curl_estimator,
            est_pressure=indicators.pressure_estimator,
            est_total=indicators.total_estimator,
            picard_iters=report.iterations,
            elements=mesh.num_triangles,
            wall_time=time.perf_counter() - started,
            est_osc=indicators.oscillation_estimator,
        )
        records.append(record)
        for observer in observers:
            observer.notify(record, mesh, state, indicators)
        log.info('Iteration %d: ndof=%d, elements=%d, estimator=%.6e, picard=%d',
                 iteration, record.ndof, record.elements, record.est_total, record.picard_iters)

        marked = mark(indicators.total, mark_factor)
        if not len(marked):
            log.info('Stopping: all indicators vanish, nothing to refine')
            stagnated = True
            break
        if iteration == iterations:
            break
        if max_ndof is not None and layout.ndof >= max_ndof:
            log.info('Stopping: %d DOFs reached the cap %d', layout.ndof, max_ndof)
            break
        marked_history.append(marked)
        mesh = bisect(mesh, marked)

    return AdaptiveResult(records, mesh, state, indicators, stagnated, marked_history)


def fit_slope(ndofs, values, last: int = 10) -> float:
    """Return the least-squares slope of log(values) against log(ndofs) over the `last` entries."""
    ndofs = np.asarray(ndofs, dtype=float)[-last:]
    values = np.asarray(values, dtype=float)[-last:]
    if len(ndofs) < 2:
        raise ValueError('At least two points are needed to fit a slope')
    return float(np.polyfit(np.log(ndofs), np.log(values), 1)[0])
