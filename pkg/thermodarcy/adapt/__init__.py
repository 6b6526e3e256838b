"""This package contains the adaptive loop with maximum marking and its observers."""

__all__ = [
    'mark',
    'AdaptiveRecord',
    'AdaptiveResult',
    'AdaptiveRunError',
    'run_adaptive',
    'fit_slope',
    'IterationObserver',
    'ConvergenceWriter',
    'VtkWriter',
]
__version__ = '1.0'
__author__ = 'Thermodarcy developers'

from .marking import mark
from .observers import IterationObserver, ConvergenceWriter, VtkWriter
from .loop import AdaptiveRecord, AdaptiveResult, AdaptiveRunError, run_adaptive, fit_slope
