"""This module contains execution of configured runs and parallel sweeps over the integrability index p."""

import os
import signal
import logging
import multiprocessing
from dataclasses import asdict
from typing import Iterable, List, NamedTuple, Optional, Dict
from thermodarcy.mesh import read_mesh
from thermodarcy.adapt import AdaptiveResult, AdaptiveRunError, ConvergenceWriter, VtkWriter, run_adaptive
from thermodarcy.utils.logging import cli_logger
from .config import RunConfig
from .export import fitted_slopes, read_convergence, CONVERGENCE_FILENAME
from .problems import builtin_problem

__author__ = 'Thermodarcy developers'

log = logging.getLogger(__name__)


class SweepOutcome(NamedTuple):
    """Result of one run of a sweep."""

    p: float
    out: str
    slopes: Dict[str, float]
    error: Optional[str]


def execute(config: RunConfig) -> AdaptiveResult:
    """
    Run the adaptive loop for `config`, writing `config.resolved`, `convergence.csv` and optional VTK files.

    Raise ConfigInvalidError, ProblemInvalidError, MeshInvalidError or AdaptiveRunError on failure.
    """
    config.validate()
    problem = builtin_problem(config.problem)
    mesh = read_mesh(config.mesh) if config.mesh else problem.initial_mesh(config.mesh_size)
    config.dump()
    with ConvergenceWriter(config.out, oscillation=config.oscillation) as convergence:
        observers = [convergence]
        if config.vtk:
            observers.append(VtkWriter(config.out))
        result = run_adaptive(problem, config.p, config.iterations, mesh,
                              tol=config.tol,
                              max_picard=config.max_picard,
                              quad_degree=config.quad_degree,
                              mark_factor=config.mark_factor,
                              max_ndof=config.max_ndof,
                              oscillation=config.oscillation,
                              observers=observers)
        for observer in observers:
            observer.done()
    return result


def sweep_directory(out: str, p: float) -> str:
    """Return the output directory of the run with index `p`."""
    return os.path.join(out, 'p_{}'.format(p))


def __init_worker():
    # let worker processes ignore SIGINT, parent will cleanup pool via terminate()
    signal.signal(signal.SIGINT, signal.SIG_IGN)


def _sweep_task(values: dict) -> SweepOutcome:
    config = RunConfig(**values)
    try:
        execute(config)
        error = None
    except (AdaptiveRunError, ValueError, OSError) as err:
        log.exception('Run p=%s failed', config.p)
        error = str(err)
    path = os.path.join(config.out, CONVERGENCE_FILENAME)
    slopes = fitted_slopes(read_convergence(path)) if os.path.exists(path) else {}
    if error:
        cli_logger().info('Run p=%s failed: %s', config.p, error)
    else:
        cli_logger().info('Run p=%s finished -> %s', config.p, config.out)
    return SweepOutcome(config.p, config.out, slopes, error)


def sweep(config: RunConfig, ps: Iterable[float], processes: int = 0) -> List[SweepOutcome]:
    """
    Run `config` once per value of `ps`, each writing into `<out>/p_<value>/`.

    `processes` is the number of worker processes [0=runs in this process].
    Outcomes are returned in the order of `ps`.
    """
    tasks = [asdict(config.update(p=p, out=sweep_directory(config.out, p)).validate()) for p in ps]
    if processes <= 0:
        return [_sweep_task(task) for task in tasks]
    with multiprocessing.Pool(processes, initializer=__init_worker) as pool:
        return pool.map(_sweep_task, tasks)
