"""
This module contains white-box unit tests of the app package
"""
# pylint: disable=W0212, C0103
import os
import shutil
import unittest
from dataclasses import replace
import numpy as np
import meshio
import toml
from click.testing import CliRunner
from thermodarcy.mesh import criss_cross_square, refine_uniform, read_mesh
from thermodarcy.fem import DofLayout, h1_seminorm_error, l2_error, quadrature_rule
from thermodarcy.assembly import CoupledState, ViscosityError
from thermodarcy.solver import picard
from thermodarcy.estimator import estimate
from thermodarcy.app import (
    CSV_HEADER,
    ConfigInvalidError,
    Domain,
    ProblemInvalidError,
    RunConfig,
    builtin_problem,
    export_vtk,
    SLOPE_RANGE,
    fitted_slopes,
    get,
    read_convergence,
    show,
    slopes_outside,
)
from thermodarcy.app import cli as app_cli
from thermodarcy.app.sweep import sweep, sweep_directory
from thermodarcy.mesh import cli as mesh_cli

TMP_DIR = 'tests/tmp_app/'

RULE = quadrature_rule(5)


class TestProblems(unittest.TestCase):
    """Unit test class of the problem library"""

    def test_registry(self):
        """Test names of the built-in problems"""
        assert show() == ('example1', 'example2', 'verification-poisson', 'verification-darcy-gradient')
        assert len(show(True)) == 4
        assert get('example1') is not None
        assert get('nothing') is None

    def test_unknown(self):
        """Test that an unknown problem lists the available ones"""
        with self.assertRaises(ProblemInvalidError) as context:
            builtin_problem('example3')
        assert 'example1' in str(context.exception)

    def test_example1(self):
        """Test data of example 1"""
        problem = builtin_problem('example1')
        assert problem.domain == Domain.UNIT_SQUARE
        assert problem.viscosity(0.0) == 2.0
        assert problem.viscosity_bounds == (1.0, 3.0)
        assert problem.kappa == 1.0
        assert len(problem.dirac_points) == 4
        mesh = problem.initial_mesh()
        assert mesh.num_triangles == 64

    def test_example2(self):
        """Test data of example 2"""
        problem = builtin_problem('example2')
        assert problem.domain == Domain.L_SHAPE
        assert problem.viscosity(0.0) == 2.0
        assert problem.viscosity_bounds == (1.0, 2.0)
        assert len(problem.dirac_points) == 3
        self.assertAlmostEqual(problem.viscosity_derivative(1.0), -2.0 * np.exp(-1.0), delta=1e-15)
        mesh = problem.initial_mesh()
        assert np.isclose(mesh.area, 3.0)
        assert mesh.num_triangles == 48
        assert np.allclose(mesh.diameters, 0.5)

    def test_verification(self):
        """Test the verification problems"""
        poisson = builtin_problem('verification-poisson')
        assert poisson.dirac_points == ()
        self.assertAlmostEqual(poisson.heat_source(0.5, 0.5), 2.0 * np.pi ** 2, delta=1e-12)
        gradient = builtin_problem('verification-darcy-gradient')
        assert gradient.exact_pressure(1.0, 0.3) == 0.5

    def test_validation(self):
        """Test rejection of inconsistent data"""
        problem = builtin_problem('example1')
        self.assertRaises(ViscosityError, replace(problem, viscosity_bounds=(1.5, 3.0)).validate)
        self.assertRaises(ViscosityError, replace(problem, viscosity_bounds=(0.0, 3.0)).validate)
        self.assertRaises(ProblemInvalidError, replace(problem, kappa=0.0).validate)
        self.assertRaises(ProblemInvalidError, replace(problem, dirac_points=((1.5, 0.5),)).validate)
        example2 = builtin_problem('example2')
        self.assertRaises(ProblemInvalidError, replace(example2, dirac_points=((0.5, -0.5),)).validate)

    def test_domain(self):
        """Test Domain membership"""
        assert Domain.L_SHAPE.contains((0.0, 0.0))
        assert Domain.L_SHAPE.contains((0.5, 0.0))
        assert not Domain.L_SHAPE.contains((0.5, -0.5))
        assert Domain.UNIT_SQUARE.contains((1.0, 1.0))
        assert not Domain.UNIT_SQUARE.contains((1.1, 0.5))
        assert str(Domain.L_SHAPE) == 'L_SHAPE'

    def test_custom_domain(self):
        """Test that a custom domain requires a mesh file"""
        problem = replace(builtin_problem('example1'), domain=Domain.CUSTOM)
        self.assertRaises(ProblemInvalidError, problem.initial_mesh)


class TestVerification(unittest.TestCase):
    """Unit test class of manufactured solutions"""

    def test_poisson_rate(self):
        """Test first order H1 convergence of the temperature under uniform refinement"""
        problem = builtin_problem('verification-poisson')
        mesh = refine_uniform(problem.initial_mesh(), 2)
        errors = []
        l2_errors = []
        for _ in range(4):
            layout = DofLayout(mesh)
            state, report = picard(mesh, layout, problem, rule=RULE)
            assert report.converged
            assert np.all(state.velocity == 0.0)
            errors.append(h1_seminorm_error(mesh, state.nodal_temperature(), problem.exact_temperature_gradient,
                                            RULE))
            l2_errors.append(l2_error(mesh, state.nodal_temperature(), problem.exact_temperature, RULE))
            mesh = refine_uniform(mesh, 2)
        rates = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
        assert np.all(rates >= 0.9)
        assert all(later < earlier for earlier, later in zip(l2_errors, l2_errors[1:]))

    def test_darcy_gradient(self):
        """Test the exact discrete solution of the gradient force problem inside the coupled solver"""
        problem = builtin_problem('verification-darcy-gradient')
        mesh = problem.initial_mesh()
        state, _ = picard(mesh, DofLayout(mesh), problem, rule=RULE)
        assert np.max(np.abs(state.velocity)) < 1e-9
        assert np.max(np.abs(state.pressure - problem.exact_pressure(*mesh.barycenters.T))) < 1e-9


class TestRunConfig(unittest.TestCase):
    """Unit test class of RunConfig"""

    def setUp(self):
        os.makedirs(TMP_DIR, exist_ok=True)

    def tearDown(self):
        shutil.rmtree(TMP_DIR, ignore_errors=True)

    def test_defaults(self):
        """Test that the defaults are valid"""
        config = RunConfig().validate()
        assert config.p == 1.6
        assert config.iterations == 29
        assert config.quad_degree == 19
        assert config.tol == 1e-8
        assert config.max_picard == 200
        assert config.mark_factor == 0.5
        assert not config.vtk

    def test_violations(self):
        """Test that all violations are collected"""
        config = RunConfig(problem='nothing', p=2.0, iterations=0, quad_degree=25, mark_factor=1.0, tol=0.0)
        assert len(config.violations()) == 6
        with self.assertRaises(ConfigInvalidError) as context:
            config.validate()
        assert len(context.exception.violations) == 6
        assert 'p=2.0' in str(context.exception)

    def test_update(self):
        """Test that None overrides are ignored"""
        config = RunConfig().update(p=1.2, iterations=None, out=TMP_DIR)
        assert config.p == 1.2
        assert config.iterations == 29
        assert config.out == TMP_DIR

    def test_dump_load(self):
        """Test writing and reading the resolved configuration"""
        config = RunConfig(problem='example2', p=1.3, iterations=5, out=TMP_DIR, mesh_size=6)
        path = config.dump()
        assert os.path.basename(path) == 'config.resolved'
        document = toml.load(path)
        assert 'mesh' not in document
        assert document['mesh_size'] == 6
        assert RunConfig.load(path) == config

    def test_load_invalid(self):
        """Test unknown keys and malformed files"""
        path = TMP_DIR + 'bad.toml'
        with open(path, 'w') as w_file:
            w_file.write('problem = "example1"\ncolour = "red"\n')
        with self.assertRaises(ConfigInvalidError) as context:
            RunConfig.load(path)
        assert 'colour' in str(context.exception)
        with open(path, 'w') as w_file:
            w_file.write('p = = 1\n')
        self.assertRaises(ConfigInvalidError, RunConfig.load, path)


class TestExport(unittest.TestCase):
    """Unit test class of the exporters"""

    def setUp(self):
        os.makedirs(TMP_DIR, exist_ok=True)

    def tearDown(self):
        shutil.rmtree(TMP_DIR, ignore_errors=True)

    def test_vtk(self):
        """Test the solution VTK file"""
        problem = builtin_problem('example1')
        mesh = criss_cross_square(2)
        layout = DofLayout(mesh)
        state, _ = picard(mesh, layout, problem, rule=RULE)
        indicators = estimate(mesh, state, problem, 1.6, RULE)
        path = TMP_DIR + 'solution.vtk'
        export_vtk(mesh, state, indicators, path)
        data = meshio.read(path)
        assert np.allclose(data.point_data['T'], state.nodal_temperature())
        assert np.allclose(data.cell_data['p'][0], state.pressure)
        assert np.allclose(data.cell_data['est_total'][0], indicators.total)
        assert data.cell_data['u'][0].shape == (mesh.num_triangles, 3)

    def test_vtk_missing_directory(self):
        """Test that a missing directory is reported"""
        mesh = criss_cross_square(1)
        state = CoupledState.zero(DofLayout(mesh))
        self.assertRaises(OSError, export_vtk, mesh, state, None, TMP_DIR + 'missing/solution.vtk')

    def test_slopes(self):
        """Test slopes of a synthetic convergence table"""
        rows = [{'ndof': n, 'est_heat': n ** -0.5, 'est_curl': n ** -1.0, 'est_pressure': 2 * n ** -0.5,
                 'est_total': n ** -0.25} for n in (10, 100, 1000)]
        slopes = fitted_slopes(rows)
        assert np.isclose(slopes['est_heat'], -0.5)
        assert np.isclose(slopes['est_curl'], -1.0)
        assert np.isclose(slopes['est_total'], -0.25)
        assert fitted_slopes(rows[:1]) == {}

    def test_slopes_outside(self):
        """Test that slopes of a stalling estimator are flagged"""
        ndofs = [10 * 2 ** k for k in range(12)]
        rows = [{'ndof': n, 'est_heat': n ** -0.5, 'est_curl': n ** -0.5, 'est_pressure': 3 * n ** -0.45,
                 'est_total': 0.9 ** k} for k, n in enumerate(ndofs)]
        slopes = fitted_slopes(rows)
        assert slopes_outside(slopes) == ['est_total']
        assert slopes_outside(slopes, (-0.4, -0.1)) == ['est_heat', 'est_curl', 'est_pressure']
        assert SLOPE_RANGE == (-0.65, -0.35)


class TestCli(unittest.TestCase):
    """Unit test class of the CLI commands"""

    def setUp(self):
        os.makedirs(TMP_DIR, exist_ok=True)
        self.runner = CliRunner()

    def tearDown(self):
        shutil.rmtree(TMP_DIR, ignore_errors=True)

    def run_args(self, out, *extra):
        """Arguments of a short run."""
        return ['--problem', 'example1', '--p', '1.6', '--iters', '2', '--quad-degree', '5', '--mesh-size', '2',
                '--out', out] + list(extra)

    def test_problems(self):
        """Test listing of problems"""
        result = self.runner.invoke(app_cli.problems_command, [])
        assert result.exit_code == 0
        assert result.output.split() == list(show())

    def test_run(self):
        """Test a short run and its reproduction from the resolved configuration"""
        out = TMP_DIR + 'run'
        result = self.runner.invoke(app_cli.run_command, self.run_args(out))
        assert result.exit_code == 0, result.output
        assert 'Fitted decay slope' in result.output
        rows = read_convergence(os.path.join(out, 'convergence.csv'))
        assert len(rows) == 2
        with open(os.path.join(out, 'convergence.csv')) as r_file:
            assert r_file.readline().strip() == ','.join(CSV_HEADER)
            first = r_file.read()

        resolved = os.path.join(out, 'config.resolved')
        assert toml.load(resolved)['mesh_size'] == 2
        result = self.runner.invoke(app_cli.run_command, ['--config', resolved])
        assert result.exit_code == 0, result.output
        with open(os.path.join(out, 'convergence.csv')) as r_file:
            r_file.readline()
            assert r_file.read() == first

    def test_run_vtk(self):
        """Test VTK output of a run"""
        out = TMP_DIR + 'vtk'
        result = self.runner.invoke(app_cli.run_command, self.run_args(out, '--vtk', 'on'))
        assert result.exit_code == 0, result.output
        assert os.path.exists(os.path.join(out, 'solution_0001.vtk'))
        assert os.path.exists(os.path.join(out, 'mesh_0002.vtk'))

    def test_run_oscillation(self):
        """Test that the data oscillation reaches the table, the VTK files and the resolved configuration"""
        out = TMP_DIR + 'oscillation'
        result = self.runner.invoke(app_cli.run_command, self.run_args(out, '--vtk', 'on', '--oscillation'))
        assert result.exit_code == 0, result.output
        assert 'Data oscillation' in result.output
        with open(os.path.join(out, 'convergence.csv')) as r_file:
            assert r_file.readline().strip() == ','.join(CSV_HEADER + ('est_osc',))
        rows = read_convergence(os.path.join(out, 'convergence.csv'))
        assert len(rows) == 2
        assert all(row['est_osc'] > 0.0 for row in rows)
        data = meshio.read(os.path.join(out, 'solution_0002.vtk'))
        assert np.all(data.cell_data['oscillation'][0] >= 0.0)
        assert np.isclose(np.sqrt(np.sum(data.cell_data['oscillation'][0] ** 2)), rows[1]['est_osc'])
        assert toml.load(os.path.join(out, 'config.resolved'))['oscillation'] is True

        out = TMP_DIR + 'no_oscillation'
        result = self.runner.invoke(app_cli.run_command, self.run_args(out, '--vtk', 'on'))
        assert result.exit_code == 0, result.output
        assert 'est_osc' not in read_convergence(os.path.join(out, 'convergence.csv'))[0]
        assert 'oscillation' not in meshio.read(os.path.join(out, 'solution_0001.vtk')).cell_data

    def test_run_invalid(self):
        """Test invalid parameters and a missing configuration file"""
        out = TMP_DIR + 'invalid'
        result = self.runner.invoke(app_cli.run_command, self.run_args(out, '--p', '2.5'))
        assert result.exit_code == 1
        assert not os.path.exists(os.path.join(out, 'convergence.csv'))
        result = self.runner.invoke(app_cli.run_command, ['--config', TMP_DIR + 'missing.toml'])
        assert result.exit_code != 0

    def test_sweep(self):
        """Test a sweep over two values of p in the calling process"""
        config = RunConfig(problem='example1', iterations=2, quad_degree=5, mesh_size=2, out=TMP_DIR + 'sweep')
        with self.assertLogs('THERMODARCY_CLI', level='INFO') as progress:
            outcomes = sweep(config, [1.3, 1.7])
        assert len(progress.output) == 2
        assert 'p=1.3 finished' in progress.output[0]
        assert 'p=1.7 finished' in progress.output[1]
        assert [outcome.p for outcome in outcomes] == [1.3, 1.7]
        for outcome in outcomes:
            assert outcome.error is None
            assert outcome.out == sweep_directory(config.out, outcome.p)
            assert os.path.exists(os.path.join(outcome.out, 'convergence.csv'))
            assert set(outcome.slopes) == {'est_heat', 'est_curl', 'est_pressure', 'est_total'}
        self.assertRaises(ConfigInvalidError, sweep, config, [2.0])

    def test_mesh_commands(self):
        """Test generation, inspection and refinement of mesh files"""
        path = TMP_DIR + 'square.txt'
        result = self.runner.invoke(mesh_cli.mesh_group, ['generate', 'square', path, '--size', '2', '--vtk'])
        assert result.exit_code == 0, result.output
        assert read_mesh(path).num_triangles == 16
        assert os.path.exists(path + '.vtk')
        result = self.runner.invoke(mesh_cli.mesh_group, ['show', path])
        assert result.exit_code == 0
        assert 'triangles:       16' in result.output
        refined = TMP_DIR + 'refined.txt'
        result = self.runner.invoke(mesh_cli.mesh_group, ['refine', path, refined, '--times', '2'])
        assert result.exit_code == 0
        assert read_mesh(refined).num_triangles == 64
        with open(path, 'w') as w_file:
            w_file.write('garbage\n')
        result = self.runner.invoke(mesh_cli.mesh_group, ['show', path])
        assert result.exit_code == 1


if __name__ == '__main__':
    unittest.main()
