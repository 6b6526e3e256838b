"""Entry point of THERMODARCY Command Line Interface."""

import os
import click
from . import __version__
from .utils.logging import setup_thermodarcy_logger, setup_cli_logger
from .mesh import cli as mesh_cli
from .app import cli as app_cli


@click.group()
@click.option('--debug/--no-debug', default=False, help='DEBUG logging level will be turned on.')
@click.option('--cpu', default=max(1, (os.cpu_count() or 2) - 1), type=int, help='Max Number of CPU cores to use.')
@click.version_option(version=__version__)
@click.pass_context
def cli(ctx, debug, cpu):
    """Thermodarcy is an adaptive finite element solver for Darcy flow coupled with heat transport."""

    # based on parameters setup logger
    setup_thermodarcy_logger(debug=debug, process_id=cpu > 1)
    setup_cli_logger()

    if debug:
        click.echo('Debug mode is ON')

    ctx.ensure_object(dict)
    ctx.obj['cpu'] = cpu


cli.add_command(mesh_cli.mesh_group)
cli.add_command(app_cli.run_command)
cli.add_command(app_cli.sweep_command)
cli.add_command(app_cli.problems_command)


if __name__ == "__main__":
    cli()  # pylint: disable=E1120
