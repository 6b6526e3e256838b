"""
This module provides access to the built-in problems of the coupled Darcy/temperature system.

.. important::
   Every problem is built by a factory registered under its name; the factory takes no argument
   and returns a fresh ProblemSpec. Worker processes rebuild problems by name.

To add an additional problem, register its factory under its name to global variable PROBLEMS in
'MODULE INITIALIZATION' section.

- show()              - return tuple with all available problem names

- get(name)           - return problem factory with given name

- builtin_problem(name) - return ProblemSpec of given name or raise ProblemInvalidError
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Optional, Tuple
import numpy as np
from thermodarcy.mesh import Mesh, criss_cross_square, criss_cross_l_shape, read_mesh
from thermodarcy.assembly import ViscosityError

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)

VISCOSITY_SAMPLES = np.linspace(-50.0, 50.0, 2001)


class ProblemInvalidError(ValueError):
    """Raised for unknown problems or inconsistent problem data."""


class Domain(IntEnum):
    """Enumeration of supported domains."""

    UNIT_SQUARE = 1  # (0, 1)^2
    L_SHAPE = 2  # (-1, 1)^2 without [0, 1) x [-1, 0)
    CUSTOM = 3  # mesh file

    def __str__(self):
        return str(self.name)

    def contains(self, point, tol: float = 1e-12) -> bool:
        """Return True if `point` lies in the closure of the domain (always True for CUSTOM)."""
        x, y = point
        if self == Domain.UNIT_SQUARE:
            return -tol <= x <= 1.0 + tol and -tol <= y <= 1.0 + tol
        if self == Domain.L_SHAPE:
            inside = -1.0 - tol <= x <= 1.0 + tol and -1.0 - tol <= y <= 1.0 + tol
            return inside and not (x > tol and y < -tol)
        return True


@dataclass
class ProblemSpec:
    """
    Data of a coupled problem.

    `viscosity`, `viscosity_derivative` are vectorized functions of the temperature,
    `viscosity_bounds` are the declared bounds (nu_min, nu_max) of the viscosity,
    `kappa` is the constant thermal diffusivity,
    `force`(x, y) returns the two components of the body force, `curl_force`(x, y) its scalar curl,
    `dirac_points` are the locations of the point heat sources,
    `heat_source`(x, y) is an optional smooth heat source used by verification problems,
    `exact_temperature`, `exact_temperature_gradient`, `exact_pressure` are optional exact solutions.
    """

    name: str
    description: str
    domain: Domain
    viscosity: Callable
    viscosity_derivative: Callable
    viscosity_bounds: Tuple[float, float]
    force: Callable
    curl_force: Optional[Callable] = None
    kappa: float = 1.0
    dirac_points: Tuple[Tuple[float, float], ...] = ()
    heat_source: Optional[Callable] = None
    exact_temperature: Optional[Callable] = None
    exact_temperature_gradient: Optional[Callable] = None
    exact_pressure: Optional[Callable] = None
    mesh_size: int = 4
    mesh_file: Optional[str] = None

    def __str__(self):
        return '{} ({}): {}'.format(self.name, self.domain, self.description)

    def curl_of_force(self) -> Callable:
        """Return curl f; raise ProblemInvalidError if the problem does not supply it."""
        if self.curl_force is None:
            raise ProblemInvalidError("Problem '%s' does not supply curl f, provide it analytically as "
                                      "`curl_force`" % self.name)
        return self.curl_force

    def validate(self) -> 'ProblemSpec':
        """
        Check positivity and boundedness of the data.

        Raise ViscosityError if sampled viscosity values leave the declared bounds,
        ProblemInvalidError for non-positive kappa or Dirac points outside the domain.
        """
        lower, upper = self.viscosity_bounds
        if not 0.0 < lower <= upper:
            raise ViscosityError("Problem '%s' declares invalid viscosity bounds (%s, %s)" % (self.name, lower, upper))
        values = np.broadcast_to(np.asarray(self.viscosity(VISCOSITY_SAMPLES), dtype=float), VISCOSITY_SAMPLES.shape)
        outside = (values < lower - 1e-12) | (values > upper + 1e-12)
        if np.any(outside):
            sample = VISCOSITY_SAMPLES[np.argmax(outside)]
            raise ViscosityError("Viscosity of problem '%s' is %g at s=%g, outside the bounds (%s, %s)"
                                 % (self.name, values[np.argmax(outside)], sample, lower, upper))
        if self.kappa <= 0.0:
            raise ProblemInvalidError("Thermal diffusivity of problem '%s' must be positive, got %s"
                                      % (self.name, self.kappa))
        for point in self.dirac_points:
            if not self.domain.contains(point):
                raise ProblemInvalidError("Dirac point %s of problem '%s' lies outside the domain"
                                          % (tuple(point), self.name))
        return self

    def initial_mesh(self, size: int = None) -> Mesh:
        """Return the initial criss-cross mesh of the domain (or the mesh file of a CUSTOM domain)."""
        size = size or self.mesh_size
        if self.domain == Domain.UNIT_SQUARE:
            return criss_cross_square(size)
        if self.domain == Domain.L_SHAPE:
            return criss_cross_l_shape(max(1, size // 2))
        if self.mesh_file is None:
            raise ProblemInvalidError("Problem '%s' has a custom domain but no mesh file" % self.name)
        return read_mesh(self.mesh_file)


# -----------   PROBLEM DATA   -------------------------

def _constant_viscosity(s):
    return np.ones_like(np.asarray(s, dtype=float))


def _zero(*args):
    return np.zeros_like(np.asarray(args[0], dtype=float))


def _zero_force(x, y):
    return _zero(x), _zero(x)


def example1() -> ProblemSpec:
    """Unit square, nu(s) = sin(s) + 2, horizontal force, four point sources."""
    return ProblemSpec(
        name='example1',
        description=example1.__doc__,
        domain=Domain.UNIT_SQUARE,
        viscosity=lambda s: np.sin(s) + 2.0,
        viscosity_derivative=np.cos,
        viscosity_bounds=(1.0, 3.0),
        force=lambda x, y: (x * y * (1.0 - x) * (1.0 - y), _zero(x)),
        # curl (f1, 0) = -d f1 / dy
        curl_force=lambda x, y: -x * (1.0 - x) * (1.0 - 2.0 * y),
        dirac_points=((0.25, 0.25), (0.25, 0.75), (0.75, 0.25), (0.75, 0.75)),
        mesh_size=4,
    )


def example2() -> ProblemSpec:
    """L-shaped domain, nu(s) = exp(-s^2) + 1, polynomial force, three point sources."""
    return ProblemSpec(
        name='example2',
        description=example2.__doc__,
        domain=Domain.L_SHAPE,
        viscosity=lambda s: np.exp(-np.square(s)) + 1.0,
        viscosity_derivative=lambda s: -2.0 * s * np.exp(-np.square(s)),
        viscosity_bounds=(1.0, 2.0),
        force=lambda x, y: (10.0 * y * (1.0 - x) * (1.0 + x), 5.0 * x * (1.0 - y) * (1.0 + x)),
        # d f2 / dx - d f1 / dy
        curl_force=lambda x, y: 5.0 * (1.0 - y) * (1.0 + 2.0 * x) - 10.0 * (1.0 - x) * (1.0 + x),
        dirac_points=((-0.5, -0.5), (-0.5, 0.5), (0.5, 0.5)),
        mesh_size=4,
    )


def verification_poisson() -> ProblemSpec:
    """Unit square, no flow, smooth source with exact temperature sin(pi x) sin(pi y)."""
    return ProblemSpec(
        name='verification-poisson',
        description=verification_poisson.__doc__,
        domain=Domain.UNIT_SQUARE,
        viscosity=_constant_viscosity,
        viscosity_derivative=_zero,
        viscosity_bounds=(1.0, 1.0),
        force=_zero_force,
        curl_force=_zero,
        heat_source=lambda x, y: 2.0 * np.pi ** 2 * np.sin(np.pi * x) * np.sin(np.pi * y),
        exact_temperature=lambda x, y: np.sin(np.pi * x) * np.sin(np.pi * y),
        exact_temperature_gradient=lambda x, y: (np.pi * np.cos(np.pi * x) * np.sin(np.pi * y),
                                                 np.pi * np.sin(np.pi * x) * np.cos(np.pi * y)),
        mesh_size=2,
    )


def verification_darcy_gradient() -> ProblemSpec:
    """Unit square, unit viscosity and gradient force grad x: zero velocity, pressure x - 1/2."""
    return ProblemSpec(
        name='verification-darcy-gradient',
        description=verification_darcy_gradient.__doc__,
        domain=Domain.UNIT_SQUARE,
        viscosity=_constant_viscosity,
        viscosity_derivative=_zero,
        viscosity_bounds=(1.0, 1.0),
        force=lambda x, y: (np.ones_like(np.asarray(x, dtype=float)), _zero(x)),
        curl_force=_zero,
        exact_pressure=lambda x, y: np.asarray(x, dtype=float) - 0.5,
        mesh_size=4,
    )


def get(name: str) -> Optional[Callable[[], ProblemSpec]]:
    """Get problem factory by name."""
    return PROBLEMS.get(name, None)


def show(include_description: bool = False):
    """Show available problems."""
    if include_description:
        return tuple("{:<28} - {}".format(name, factory.__doc__) for name, factory in PROBLEMS.items())
    return tuple(PROBLEMS.keys())


def builtin_problem(name: str) -> ProblemSpec:
    """Return the validated built-in problem `name`; raise ProblemInvalidError for unknown names."""
    factory = get(name)
    if factory is None:
        raise ProblemInvalidError("Unknown problem '%s', available problems: %s" % (name, ', '.join(show())))
    return factory().validate()


# -----------   MODULE INITIALIZATION   -------------------------

PROBLEMS = OrderedDict()
PROBLEMS['example1'] = example1
PROBLEMS['example2'] = example2
PROBLEMS['verification-poisson'] = verification_poisson
PROBLEMS['verification-darcy-gradient'] = verification_darcy_gradient
