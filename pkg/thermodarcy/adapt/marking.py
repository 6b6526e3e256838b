"""This module contains the maximum marking strategy."""

import numpy as np

__author__ = 'Thermodarcy developers'

DEFAULT_FACTOR = 0.5


def mark(values, factor: float = DEFAULT_FACTOR) -> np.ndarray:
    """
    Return ids of the elements whose indicator is strictly greater than `factor` times the maximum.

    The result is empty only when all indicators vanish.
    """
    values = np.asarray(values, dtype=float)
    if not values.size:
        raise ValueError('Cannot mark elements of an empty indicator field')
    if not 0.0 < factor < 1.0:
        raise ValueError('Marking factor %s must lie in (0, 1)' % factor)
    largest = np.max(values)
    if largest <= 0.0:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(values > factor * largest)
