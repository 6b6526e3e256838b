"""
This module contains the residual a posteriori error indicators of the coupled problem.

    heat      E_pK^p = [h_K^(2-p) per Dirac point in K that is not a vertex of K]
                       + h_K^p ||-grad T.u - T div u||^p_Lp(K) + h_K ||[[(kappa grad T - T u).n]]||^p_Lp(dK\\dOmega)
    curl      E_K^2  = h_K^2 ||curl(f - nu(T) u)||^2_L2(K) + h_K ||[[(f - nu(T) u).tau]]||^2_L2(dK\\dOmega)
    pressure  S_K^2  = h_K^2 ||f - nu(T) u - grad p||^2_L2(K) + h_K ||[[p n]]||^2_L2(dK\\dOmega)

Every interior edge enters the indicators of both incident triangles.
The global estimators are the l^p (heat) and l^2 (curl, pressure) sums, their total is the plain sum.
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Optional
import numpy as np
from thermodarcy.mesh import Mesh, PointClass, locate_all
from thermodarcy.fem import (
    QuadratureRule,
    quadrature_rule,
    edge_rule_for_degree,
    rt0_coefficients,
    rt0_field_values,
    rt0_divergence,
    p1_element_gradients,
    p1_values,
)
from thermodarcy.assembly import CoupledState, force_at
from .jumps import EdgeTraces, edge_traces

if TYPE_CHECKING:
    from thermodarcy.app.problems import ProblemSpec

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)


class EstimatorParameterError(ValueError):
    """Raised when the integrability index p is outside (1, 2)."""


def validate_exponent(p: float) -> float:
    if not 1.0 < p < 2.0:
        raise EstimatorParameterError('Integrability index p=%s must lie in the open interval (1, 2)' % p)
    return float(p)


@dataclass(frozen=True)
class VolumeFields:
    """Discrete fields of a state evaluated at the volume quadrature points (nt x nq)."""

    weights: np.ndarray
    points: np.ndarray
    temperature: np.ndarray
    gradient: np.ndarray
    velocity: np.ndarray
    divergence: np.ndarray
    viscosity: np.ndarray
    force: np.ndarray


def volume_fields(mesh: Mesh, state: CoupledState, problem: 'ProblemSpec', rule: QuadratureRule) -> VolumeFields:
    """Evaluate T_h, grad T_h, u_h, div u_h, nu(T_h) and f at the quadrature points of every triangle."""
    points = rule.physical_points(mesh.triangle_coordinates())
    nodal = state.nodal_temperature()
    edge_values = state.edge_velocity()
    slope, center = rt0_coefficients(mesh, edge_values)
    temperature = p1_values(mesh, nodal, rule.points)
    return VolumeFields(
        weights=mesh.areas[:, None] * rule.weights[None, :],
        points=points,
        temperature=temperature,
        gradient=p1_element_gradients(mesh, nodal),
        velocity=rt0_field_values(mesh, slope, center, np.arange(mesh.num_triangles), points),
        divergence=rt0_divergence(mesh, edge_values),
        viscosity=np.broadcast_to(np.asarray(problem.viscosity(temperature), dtype=float), temperature.shape),
        force=force_at(problem, points),
    )


def dirac_term(mesh: Mesh, points: Iterable, p: float) -> np.ndarray:
    """Return sum of h_K^(2-p) over the Dirac points lying in the closed triangle K but not at its vertices."""
    term = np.zeros(mesh.num_triangles)
    for point in points:
        for location in locate_all(mesh, point):
            if location.kind != PointClass.AT_VERTEX:
                term[location.element] += mesh.diameters[location.element] ** (2.0 - p)
    return term


def _prepare(mesh, state, problem, rule, traces):
    rule = rule or quadrature_rule()
    traces = traces or edge_traces(mesh, state, problem, edge_rule_for_degree(rule.degree))
    return rule, traces


def heat_indicator(mesh: Mesh, state: CoupledState, problem: 'ProblemSpec', p: float,
                   rule: QuadratureRule = None, traces: EdgeTraces = None,
                   fields: VolumeFields = None) -> np.ndarray:
    """
    Return the heat indicators E_pK of all triangles.

    Raise EstimatorParameterError if p is not in (1, 2).
    """
    p = validate_exponent(p)
    rule, traces = _prepare(mesh, state, problem, rule, traces)
    fields = fields or volume_fields(mesh, state, problem, rule)
    h = mesh.diameters

    residual = -np.einsum('kqd,kd->kq', fields.velocity, fields.gradient) \
        - fields.temperature * fields.divergence[:, None]
    volume = h ** p * np.sum(fields.weights * np.abs(residual) ** p, axis=1)
    jump = traces.integrate(np.abs(traces.heat_flux_jump(problem.kappa)) ** p)
    edge = h * traces.scatter(jump, mesh.num_triangles)
    return (dirac_term(mesh, problem.dirac_points, p) + volume + edge) ** (1.0 / p)


def curl_indicator(mesh: Mesh, state: CoupledState, problem: 'ProblemSpec', rule: QuadratureRule = None,
                   traces: EdgeTraces = None, fields: VolumeFields = None) -> np.ndarray:
    """
    Return the curl-Darcy indicators of all triangles.

    curl(nu(T_h) u_h) = nu'(T_h) (d1 T_h u2 - d2 T_h u1) since curl u_h vanishes on every triangle.
    Raise ProblemInvalidError if the problem does not supply curl f.
    """
    curl_force = problem.curl_of_force()
    rule, traces = _prepare(mesh, state, problem, rule, traces)
    fields = fields or volume_fields(mesh, state, problem, rule)
    h = mesh.diameters

    derivative = np.broadcast_to(np.asarray(problem.viscosity_derivative(fields.temperature), dtype=float),
                                 fields.temperature.shape)
    cross = fields.gradient[:, None, 0] * fields.velocity[..., 1] - fields.gradient[:, None, 1] * fields.velocity[..., 0]
    curl_f = np.broadcast_to(curl_force(fields.points[..., 0], fields.points[..., 1]), fields.temperature.shape)
    residual = curl_f - derivative * cross
    volume = h ** 2 * np.sum(fields.weights * residual ** 2, axis=1)
    jump = traces.integrate(traces.tangential_jump() ** 2)
    edge = h * traces.scatter(jump, mesh.num_triangles)
    return np.sqrt(volume + edge)


def pressure_indicator(mesh: Mesh, state: CoupledState, problem: 'ProblemSpec', rule: QuadratureRule = None,
                       traces: EdgeTraces = None, fields: VolumeFields = None) -> np.ndarray:
    """Return the pressure-Darcy indicators of all triangles (grad p_h vanishes for P0 pressures)."""
    rule, traces = _prepare(mesh, state, problem, rule, traces)
    fields = fields or volume_fields(mesh, state, problem, rule)
    h = mesh.diameters

    residual = fields.force - fields.viscosity[..., None] * fields.velocity
    volume = h ** 2 * np.sum(fields.weights * np.sum(residual ** 2, axis=-1), axis=1)
    jump = traces.lengths * traces.pressure_jump() ** 2
    edge = h * traces.scatter(jump, mesh.num_triangles)
    return np.sqrt(volume + edge)


def data_oscillation(mesh: Mesh, problem: 'ProblemSpec', rule: QuadratureRule = None) -> np.ndarray:
    """Return h_K ||f - mean_K f||_L2(K) for all triangles."""
    rule = rule or quadrature_rule()
    points = rule.physical_points(mesh.triangle_coordinates())
    force = force_at(problem, points)
    mean = np.einsum('q,kqd->kd', rule.weights, force)
    squared = np.sum((force - mean[:, None, :]) ** 2, axis=-1) @ rule.weights
    return mesh.diameters * np.sqrt(mesh.areas * squared)


@dataclass(frozen=True)
class IndicatorField:
    """
    Per-triangle indicators (`heat`, `curl`, `pressure` and their sum `total`), the global
    estimators and the integrability index `p` they were computed with.
    """

    heat: np.ndarray
    curl: np.ndarray
    pressure: np.ndarray
    total: np.ndarray
    heat_estimator: float
    curl_estimator: float
    pressure_estimator: float
    total_estimator: float
    p: float
    oscillation: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.total)

    @property
    def oscillation_estimator(self) -> Optional[float]:
        """Global data oscillation (l2 sum), None if it was not computed."""
        if self.oscillation is None:
            return None
        return float(np.sqrt(np.sum(self.oscillation ** 2)))

    def as_cell_data(self) -> dict:
        """Return the per-triangle arrays keyed by their export names."""
        data = {'est_heat': self.heat, 'est_curl': self.curl, 'est_pressure': self.pressure, 'est_total': self.total}
        if self.oscillation is not None:
            data['oscillation'] = self.oscillation
        return data


def aggregate(heat: np.ndarray, curl: np.ndarray, pressure: np.ndarray, p: float,
              oscillation: np.ndarray = None) -> IndicatorField:
    """Combine per-triangle indicators into an IndicatorField with the global estimators."""
    p = validate_exponent(p)
    heat, curl, pressure = (np.asarray(values, dtype=float) for values in (heat, curl, pressure))
    heat_estimator = float(np.sum(heat ** p) ** (1.0 / p))
    curl_estimator = float(np.sqrt(np.sum(curl ** 2)))
    pressure_estimator = float(np.sqrt(np.sum(pressure ** 2)))
    return IndicatorField(
        heat=heat,
        curl=curl,
        pressure=pressure,
        total=heat + curl + pressure,
        heat_estimator=heat_estimator,
        curl_estimator=curl_estimator,
        pressure_estimator=pressure_estimator,
        total_estimator=heat_estimator + curl_estimator + pressure_estimator,
        p=p,
        oscillation=oscillation,
    )


def estimate(mesh: Mesh, state: CoupledState, problem: 'ProblemSpec', p: float, rule: QuadratureRule = None,
             oscillation: bool = False) -> IndicatorField:
    """Compute all three indicator families sharing one edge-trace cache and aggregate them."""
    p = validate_exponent(p)
    rule, traces = _prepare(mesh, state, problem, rule, None)
    fields = volume_fields(mesh, state, problem, rule)
    indicators = aggregate(heat_indicator(mesh, state, problem, p, rule, traces, fields),
                           curl_indicator(mesh, state, problem, rule, traces, fields),
                           pressure_indicator(mesh, state, problem, rule, traces, fields),
                           p,
                           data_oscillation(mesh, problem, rule) if oscillation else None)
    log.debug('Estimators: heat %.6e, curl %.6e, pressure %.6e, total %.6e', indicators.heat_estimator,
              indicators.curl_estimator, indicators.pressure_estimator, indicators.total_estimator)
    return indicators
