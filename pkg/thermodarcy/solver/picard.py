"""
This module contains the Picard fixed-point iteration of the coupled Darcy/temperature problem.

Starting from the zero state, every iteration solves the Darcy system with the viscosity frozen at
the previous temperature and then the temperature system with the new velocity. The iteration
stops once the Euclidean norm of the increment of all coefficients (u, p, T) drops below `tol`.
"""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, List, Tuple
import numpy as np
from thermodarcy.mesh import Mesh
from thermodarcy.fem import DofLayout, QuadratureRule, quadrature_rule
from thermodarcy.assembly import (
    CoupledState,
    ZeroMean,
    assemble_darcy,
    assemble_temperature,
    split_darcy_solution,
    darcy_residual,
    temperature_residual,
)
from .linear import solve_sparse

if TYPE_CHECKING:
    from thermodarcy.app.problems import ProblemSpec

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-8
DEFAULT_MAX_ITERATIONS = 200
PRESSURE_MEAN_TOLERANCE = 1e-12


@dataclass
class PicardReport:
    """Outcome of a Picard run: iterations used, last increment, increment history, converged flag."""

    iterations: int = 0
    increment: float = float('inf')
    history: List[float] = field(default_factory=list)
    converged: bool = False

    def record(self, increment: float) -> None:
        self.history.append(increment)
        self.iterations = len(self.history)
        self.increment = increment


class PicardNonConvergenceError(RuntimeError):
    """Raised when the Picard iteration exceeds its iteration cap; carries the PicardReport."""

    def __init__(self, report: PicardReport):
        super().__init__('Picard iteration did not converge in %d iterations (last increment %.3e)'
                         % (report.iterations, report.increment))
        self.report = report


def _check_pressure_mean(mesh: Mesh, pressure: np.ndarray) -> np.ndarray:
    mean = float(np.dot(mesh.areas, pressure))
    bound = PRESSURE_MEAN_TOLERANCE * mesh.area * float(np.max(np.abs(pressure), initial=0.0))
    if abs(mean) > bound:
        log.warning('Pressure mean %.3e exceeds %.3e, re-centering', mean, bound)
        pressure = pressure - mean / mesh.area
    return pressure


def solve_darcy(mesh: Mesh, layout: DofLayout, temperature: np.ndarray, problem: 'ProblemSpec',
                rule: QuadratureRule, strategy: ZeroMean = ZeroMean.MULTIPLIER) -> Tuple[np.ndarray, np.ndarray]:
    """Solve the Darcy system for the viscosity frozen at `temperature`; return (velocity, pressure)."""
    system = assemble_darcy(mesh, layout, temperature, problem, rule, strategy)
    velocity, pressure = split_darcy_solution(solve_sparse(system), layout, strategy)
    return velocity, _check_pressure_mean(mesh, pressure)


def solve_temperature(mesh: Mesh, layout: DofLayout, velocity: np.ndarray, problem: 'ProblemSpec',
                      rule: QuadratureRule) -> np.ndarray:
    """Solve the temperature system for the frozen `velocity`."""
    return solve_sparse(assemble_temperature(mesh, layout, velocity, problem, rule))


def picard(mesh: Mesh, layout: DofLayout, problem: 'ProblemSpec', tol: float = DEFAULT_TOLERANCE,
           max_iter: int = DEFAULT_MAX_ITERATIONS, rule: QuadratureRule = None,
           strategy: ZeroMean = ZeroMean.MULTIPLIER) -> Tuple[CoupledState, PicardReport]:
    """
    Run the Picard iteration from the zero state.

    Return the converged CoupledState with its PicardReport.
    Raise PicardNonConvergenceError if `max_iter` iterations do not reach `tol`.
    """
    rule = rule or quadrature_rule()
    state = CoupledState.zero(layout)
    report = PicardReport()
    for iteration in range(1, max_iter + 1):
        velocity, pressure = solve_darcy(mesh, layout, state.temperature, problem, rule, strategy)
        temperature = solve_temperature(mesh, layout, velocity, problem, rule)
        update = CoupledState(layout, velocity, pressure, temperature)
        increment = float(np.linalg.norm(update.vector() - state.vector()))
        report.record(increment)
        state = update
        log.debug('Picard iteration %d: increment %.6e', iteration, increment)
        if increment <= tol:
            report.converged = True
            log.info('Picard converged in %d iterations (increment %.3e, %d DOFs)',
                     iteration, increment, layout.ndof)
            return state, report
    raise PicardNonConvergenceError(report)


def fixed_point_residual(mesh: Mesh, layout: DofLayout, state: CoupledState, problem: 'ProblemSpec',
                         rule: QuadratureRule = None) -> Tuple[float, float]:
    """Return the algebraic residuals of the Darcy and temperature equations at `state`."""
    rule = rule or quadrature_rule()
    return (darcy_residual(mesh, layout, state, problem, rule),
            temperature_residual(mesh, layout, state, problem, rule))
