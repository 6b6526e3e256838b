"""Group of CLI commands running the adaptive solver.

   Commands `run`, `sweep` and `problems` of the `thermodarcy` CLI.
"""

import os
import click
from thermodarcy.fem import SUPPORTED_DEGREES
from thermodarcy.mesh import MeshInvalidError
from thermodarcy.adapt import AdaptiveRunError, fit_slope
from thermodarcy.utils import directory_with_prefix, iteration_files
from .config import RunConfig, ConfigInvalidError
from .problems import ProblemInvalidError, show
from .sweep import execute, sweep

__author__ = 'Thermodarcy developers'


def _run_options(func):
    """Decorate `func` with the options shared by `run` and `sweep`."""
    options = [
        click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False),
                     help='Run configuration file (toml); flags override its values.'),
        click.option('--problem', type=click.Choice([str(name) for name in show()]), help='Built-in problem.'),
        click.option('--mesh', type=click.Path(exists=True, dir_okay=False), help='Initial mesh file.'),
        click.option('--iters', 'iterations', type=click.IntRange(min=1), help='Number of adaptive iterations.'),
        click.option('--quad-degree', type=click.IntRange(SUPPORTED_DEGREES[0], SUPPORTED_DEGREES[-1]),
                     help='Exactness degree of the triangle quadrature.'),
        click.option('--tol', type=float, help='Picard increment tolerance.'),
        click.option('--max-picard', type=click.IntRange(min=1), help='Maximum number of Picard iterations.'),
        click.option('--mark-factor', type=float, help='Maximum marking factor.'),
        click.option('--out', type=click.Path(file_okay=False), help='Output directory.'),
        click.option('--vtk', type=click.Choice(['on', 'off']), help='Write per-iteration VTK files.'),
        click.option('--max-ndof', type=click.IntRange(min=1), help='Stop once the DOF count reaches this cap.'),
        click.option('--mesh-size', type=click.IntRange(min=1), help='Cells per unit of the initial criss-cross mesh.'),
        click.option('--oscillation/--no-oscillation', default=None,
                     help='Report the data oscillation in convergence.csv and the VTK cell data.'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _resolve(ctx, config_file, vtk, **overrides) -> RunConfig:
    try:
        config = RunConfig.load(config_file) if config_file else RunConfig()
        if vtk is not None:
            overrides['vtk'] = vtk == 'on'
        return config.update(**overrides).validate()
    except (ConfigInvalidError, TypeError) as err:
        click.echo(str(err), err=True)
        ctx.exit(1)


@click.command('run')
@_run_options
@click.option('--p', 'p', type=float, help='Integrability index p in (1, 2).')
@click.pass_context
def run_command(ctx, config_file, vtk, **overrides):
    """Runs the adaptive loop and writes convergence.csv (and VTK files) into the output directory."""
    config = _resolve(ctx, config_file, vtk, **overrides)
    click.echo('Running {} with p={} for {} iterations -> {}'.format(
        config.problem, config.p, config.iterations, config.out))
    failure = None
    try:
        result = execute(config)
    except AdaptiveRunError as err:
        failure = '{} ({} iterations completed)'.format(err, len(err.records))
    except (ProblemInvalidError, MeshInvalidError, ValueError, RuntimeError, OSError) as err:
        failure = str(err)
    if failure is not None:
        click.echo('Run failed: {}'.format(failure), err=True)
        ctx.exit(1)

    last = result.records[-1]
    click.echo('Finished {} iterations: ndof={}, elements={}, estimator={:.6e}'.format(
        len(result.records), last.ndof, last.elements, last.est_total))
    if last.est_osc is not None:
        click.echo('Data oscillation: {:.6e}'.format(last.est_osc))
    if result.stagnated:
        click.echo('Stopped early: all indicators vanish.')
    if config.vtk:
        click.echo('VTK files: {}'.format(len(iteration_files(config.out, 'solution'))))
    if len(result.records) >= 2:
        slope = fit_slope([r.ndof for r in result.records], [r.est_total for r in result.records])
        click.echo('Fitted decay slope of the total estimator: {:.4f}'.format(slope))


@click.command('sweep')
@_run_options
@click.option('--p', 'ps', type=float, multiple=True, required=True, help='Integrability index, repeatable.')
@click.pass_context
def sweep_command(ctx, config_file, vtk, ps, **overrides):
    """Runs the adaptive loop for several values of p in parallel, each into <out>/p_<value>/."""
    config = _resolve(ctx, config_file, vtk, **overrides)
    ctx.ensure_object(dict)
    processes = min(len(ps), max(0, ctx.obj.get('cpu', 0)))
    try:
        outcomes = sweep(config, ps, processes)
    except ConfigInvalidError as err:
        click.echo(str(err), err=True)
        ctx.exit(1)

    for outcome in outcomes:
        if outcome.error:
            click.echo('p={:<6} FAILED: {}'.format(outcome.p, outcome.error))
        else:
            slopes = ', '.join('{}={:.4f}'.format(key, value) for key, value in outcome.slopes.items())
            click.echo('p={:<6} {} [{}]'.format(outcome.p, outcome.out, slopes))
    click.echo('Output directories: {}'.format(', '.join(directory_with_prefix(config.out, 'p_'))))
    if any(outcome.error for outcome in outcomes):
        ctx.exit(1)


@click.command('problems')
@click.option('--description', '-d', is_flag=True, help='Shows additional info about problems.')
def problems_command(description):
    """Lists built-in problems."""
    for info in show(description):
        click.echo(info)
