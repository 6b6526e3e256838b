"""This package contains the residual a posteriori error indicators and their aggregation."""

__all__ = [
    'EdgeTraces',
    'edge_traces',
    'EstimatorParameterError',
    'IndicatorField',
    'VolumeFields',
    'volume_fields',
    'dirac_term',
    'heat_indicator',
    'curl_indicator',
    'pressure_indicator',
    'data_oscillation',
    'aggregate',
    'estimate',
]
__version__ = '1.0'
__author__ = 'Thermodarcy developers'

from .jumps import EdgeTraces, edge_traces
from .indicators import (
    EstimatorParameterError,
    IndicatorField,
    VolumeFields,
    volume_fields,
    dirac_term,
    heat_indicator,
    curl_indicator,
    pressure_indicator,
    data_oscillation,
    aggregate,
    estimate,
)
