"""This package contains cross-cutting helpers: project logging and output directory handling."""

__all__ = [
    'setup_thermodarcy_logger',
    'setup_cli_logger',
    'cli_logger',
    'directory_with_prefix',
    'iteration_files',
]
__version__ = '1.0'
__author__ = 'Thermodarcy developers'

from .logging import setup_thermodarcy_logger, setup_cli_logger, cli_logger
from .os_utils import directory_with_prefix, iteration_files
