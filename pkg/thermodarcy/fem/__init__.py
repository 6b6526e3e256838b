"""This package contains finite element spaces, local bases, DOF layout and quadrature."""

__all__ = [
    'QuadratureRule',
    'EdgeRule',
    'QuadratureError',
    'quadrature_rule',
    'edge_rule',
    'edge_rule_for_degree',
    'SUPPORTED_DEGREES',
    'DEFAULT_DEGREE',
    'DofLayout',
    'rt0_scales',
    'rt0_divergence_table',
    'rt0_coefficients',
    'rt0_field_values',
    'rt0_divergence',
    'evaluate_rt0',
    'p1_gradients',
    'p1_element_gradients',
    'p1_values',
    'evaluate_p1',
    'evaluate_grad_p1',
    'l2_error',
    'h1_seminorm_error',
]
__version__ = '1.0'
__author__ = 'Thermodarcy developers'

from .quadrature import (
    QuadratureRule,
    EdgeRule,
    QuadratureError,
    quadrature_rule,
    edge_rule,
    edge_rule_for_degree,
    SUPPORTED_DEGREES,
    DEFAULT_DEGREE,
)
from .dofs import DofLayout
from .basis import (
    rt0_scales,
    rt0_divergence_table,
    rt0_coefficients,
    rt0_field_values,
    rt0_divergence,
    evaluate_rt0,
    p1_gradients,
    p1_element_gradients,
    p1_values,
    evaluate_p1,
    evaluate_grad_p1,
)
from .norms import l2_error, h1_seminorm_error
