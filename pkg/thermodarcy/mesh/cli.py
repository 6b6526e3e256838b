"""Group of CLI commands used for mesh generation and inspection.

   Commands of `thermodarcy mesh`.
"""

import click
from .mesh import MeshInvalidError
from .generators import criss_cross_square, criss_cross_l_shape
from .refinement import refine_uniform, RefinementError
from .io import read_mesh, write_mesh, write_vtk_mesh

__author__ = 'Thermodarcy developers'

GENERATORS = {'square': criss_cross_square, 'l-shape': criss_cross_l_shape}


def _read(ctx, path):
    try:
        return read_mesh(path)
    except MeshInvalidError as err:
        click.echo(str(err), err=True)
        ctx.exit(1)


@click.group('mesh')
def mesh_group():
    """Generates, inspects and refines meshes in the plain-text mesh format."""


@mesh_group.command('generate')
@click.argument('domain', type=click.Choice(sorted(GENERATORS)))
@click.argument('output', type=click.Path(dir_okay=False))
@click.option('--size', '-n', default=4, type=click.IntRange(min=1), help='Cells per unit length.')
@click.option('--vtk', is_flag=True, help='Write a legacy VTK copy next to the mesh file.')
def mesh_generate(domain, output, size, vtk):
    """Generates a criss-cross mesh of DOMAIN into OUTPUT."""
    mesh = GENERATORS[domain](size)
    write_mesh(mesh, output)
    if vtk:
        write_vtk_mesh(mesh, output + '.vtk')
    click.echo('{} written to {}'.format(mesh, output))


@mesh_group.command('show')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def mesh_show(ctx, path):
    """Prints statistics of the mesh at PATH."""
    mesh = _read(ctx, path)
    click.echo('vertices:        {}'.format(mesh.num_vertices))
    click.echo('edges:           {} ({} boundary)'.format(mesh.num_edges, int(mesh.boundary_edges.sum())))
    click.echo('triangles:       {}'.format(mesh.num_triangles))
    click.echo('area:            {:.12g}'.format(mesh.area))
    click.echo('diameter range:  {:.6e} - {:.6e}'.format(mesh.diameters.min(), mesh.diameters.max()))
    click.echo('min angle (deg): {:.4f}'.format(mesh.min_angle()))


@mesh_group.command('refine')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@click.argument('output', type=click.Path(dir_okay=False))
@click.option('--times', '-t', default=1, type=click.IntRange(min=1), help='Number of uniform bisection rounds.')
@click.pass_context
def mesh_refine(ctx, path, output, times):
    """Bisects every triangle of the mesh at PATH and writes the result to OUTPUT."""
    mesh = _read(ctx, path)
    try:
        refined = refine_uniform(mesh, times)
    except (RefinementError, MeshInvalidError) as err:
        click.echo(str(err), err=True)
        ctx.exit(1)
    write_mesh(refined, output)
    click.echo('{} written to {}'.format(refined, output))
