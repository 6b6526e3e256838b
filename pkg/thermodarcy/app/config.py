"""
This module contains the run configuration of the adaptive solver.

The configuration is a flat toml document, e.g.:

    problem = "example1"
    p = 1.6
    iterations = 29
    quad_degree = 19
    tol = 1e-08
    max_picard = 200
    mark_factor = 0.5
    out = "./out"
    vtk = false
    oscillation = false

Keys `mesh`, `mesh_size` and `max_ndof` are optional. Every run writes the effective configuration
as `config.resolved` into its output directory; running from that file reproduces the run.
"""

import os
import logging
from collections import OrderedDict
from dataclasses import dataclass, fields, asdict
from typing import List, Optional
import toml
from thermodarcy.fem import SUPPORTED_DEGREES, DEFAULT_DEGREE
from .problems import show

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)

RESOLVED_FILENAME = 'config.resolved'


class ConfigInvalidError(ValueError):
    """Raised when a configuration violates its constraints; carries the list of violations."""

    def __init__(self, violations: List[str]):
        super().__init__('Invalid configuration:\n  ' + '\n  '.join(violations))
        self.violations = violations


@dataclass
class RunConfig:
    """Effective parameters of one adaptive run."""

    problem: str = 'example1'
    mesh: Optional[str] = None
    p: float = 1.6
    iterations: int = 29
    quad_degree: int = DEFAULT_DEGREE
    tol: float = 1e-8
    max_picard: int = 200
    mark_factor: float = 0.5
    out: str = './out'
    vtk: bool = False
    oscillation: bool = False
    max_ndof: Optional[int] = None
    mesh_size: Optional[int] = None
    seed: int = 0

    @classmethod
    def keys(cls) -> tuple:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def load(cls, path: str) -> 'RunConfig':
        """
        Load configuration from toml file at `path`.

        Raise ConfigInvalidError for unknown keys or a malformed file.
        """
        try:
            document = toml.load(path)
        except toml.TomlDecodeError as error:
            raise ConfigInvalidError(['{}: {}'.format(path, error)]) from error
        unknown = sorted(set(document) - set(cls.keys()))
        if unknown:
            raise ConfigInvalidError(['unknown key <{}>'.format(key) for key in unknown])
        log.info('Loaded configuration <%s>: %s', path, document)
        return cls(**document)

    def update(self, **overrides) -> 'RunConfig':
        """Return a copy with non-None `overrides` applied."""
        values = asdict(self)
        values.update({key: value for key, value in overrides.items() if value is not None})
        return RunConfig(**values)

    def violations(self) -> List[str]:
        """Return the list of constraint violations, empty for a valid configuration."""
        found = []
        if self.problem not in show():
            found.append('problem <{}> is not one of: {}'.format(self.problem, ', '.join(show())))
        if self.mesh is not None and not os.path.isfile(self.mesh):
            found.append('mesh file <{}> does not exist'.format(self.mesh))
        if not 1.0 < self.p < 2.0:
            found.append('p={} must lie in the open interval (1, 2)'.format(self.p))
        if self.iterations < 1:
            found.append('iterations={} must be at least 1'.format(self.iterations))
        if self.quad_degree not in SUPPORTED_DEGREES:
            found.append('quad_degree={} is not supported, choose from {}-{}'.format(
                self.quad_degree, SUPPORTED_DEGREES[0], SUPPORTED_DEGREES[-1]))
        if not self.tol > 0.0:
            found.append('tol={} must be positive'.format(self.tol))
        if self.max_picard < 1:
            found.append('max_picard={} must be at least 1'.format(self.max_picard))
        if not 0.0 < self.mark_factor < 1.0:
            found.append('mark_factor={} must lie in (0, 1)'.format(self.mark_factor))
        if self.max_ndof is not None and self.max_ndof < 1:
            found.append('max_ndof={} must be positive'.format(self.max_ndof))
        if self.mesh_size is not None and self.mesh_size < 1:
            found.append('mesh_size={} must be positive'.format(self.mesh_size))
        return found

    def validate(self) -> 'RunConfig':
        """Raise ConfigInvalidError listing all violations."""
        found = self.violations()
        if found:
            raise ConfigInvalidError(found)
        return self

    def to_toml(self) -> OrderedDict:
        """Return the configuration as an ordered mapping without unset optional keys."""
        return OrderedDict((key, value) for key, value in asdict(self).items() if value is not None)

    def dump(self, directory: str = None) -> str:
        """Write `config.resolved` into `directory` (the output directory by default), return its path."""
        directory = directory or self.out
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, RESOLVED_FILENAME)
        with open(path, 'w') as cfg_file:
            toml.dump(self.to_toml(), cfg_file)
        log.info('Configuration written to %s', path)
        return path
