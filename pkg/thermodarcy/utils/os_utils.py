"""
This module provide functions supporting work with run output directories.
"""
import os
import re

__author__ = 'Thermodarcy developers'


def directory_with_prefix(directory: str, prefix: str, filename_only: bool = False) -> str:
    """Generator listing directory and returning paths with the specified prefix."""
    if os.path.exists(directory):
        for file in sorted(os.listdir(directory)):
            if file.startswith(prefix):
                if filename_only:
                    yield file
                else:
                    yield os.path.join(directory, file)


def iteration_files(directory: str, prefix: str) -> list:
    """Return paths of `<prefix>_XXXX.vtk` files in `directory` ordered by iteration."""
    pattern = re.compile(r'^{}_(\d+)\.vtk$'.format(re.escape(prefix)))
    found = []
    for file in directory_with_prefix(directory, prefix, filename_only=True):
        match = pattern.match(file)
        if match:
            found.append((int(match.group(1)), os.path.join(directory, file)))
    return [path for _, path in sorted(found)]
