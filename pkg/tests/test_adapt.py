"""
This module contains white-box unit tests of the adapt package
"""
# pylint: disable=W0212, C0103
import os
import shutil
import unittest
from dataclasses import asdict, replace
import numpy as np
from thermodarcy.mesh import criss_cross_square
from thermodarcy.adapt import (
    AdaptiveRunError,
    ConvergenceWriter,
    IterationObserver,
    VtkWriter,
    fit_slope,
    mark,
    run_adaptive,
)
from thermodarcy.app.export import CSV_HEADER, read_convergence
from thermodarcy.app.problems import example1, example2

TMP_DIR = 'tests/tmp_adapt/'


def zero_data(problem):
    """Return `problem` without force and point sources."""
    zero = np.zeros_like
    return replace(problem, force=lambda x, y: (zero(x), zero(x)), curl_force=lambda x, y: zero(x),
                   dirac_points=())


class RecordingObserver(IterationObserver):
    """Observer keeping everything it is notified with."""

    def __init__(self, output_dir: str = None, **kwargs):
        super().__init__(output_dir, **kwargs)
        self.calls = []
        self.finished = False

    def notify(self, record, mesh, state, indicators) -> None:
        self.calls.append((record, mesh.num_triangles, len(indicators)))

    def done(self) -> None:
        self.finished = True

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.done()


class TestMarking(unittest.TestCase):
    """Unit test class of maximum marking"""

    def test_examples(self):
        """Test the strict inequality against half of the maximum"""
        assert mark([1.0, 0.4, 0.6, 0.0], 0.5).tolist() == [0, 2]
        assert mark([0.5, 1.0], 0.5).tolist() == [1]
        assert mark([2.0, 2.0, 1.0], 0.5).tolist() == [0, 1]

    def test_default_factor(self):
        """Test the default factor 0.5"""
        assert mark([1.0, 0.5, 0.50001]).tolist() == [0, 2]

    def test_zero(self):
        """Test that vanishing indicators mark nothing"""
        assert len(mark(np.zeros(5))) == 0

    def test_nonempty(self):
        """Test that the maximum is always marked"""
        values = np.random.default_rng(4).random(100)
        for factor in (0.1, 0.5, 0.99):
            assert int(np.argmax(values)) in mark(values, factor)

    def test_invalid(self):
        """Test empty fields and factors outside (0, 1)"""
        self.assertRaises(ValueError, mark, [], 0.5)
        self.assertRaises(ValueError, mark, [1.0], 0.0)
        self.assertRaises(ValueError, mark, [1.0], 1.0)


class TestAdaptiveLoop(unittest.TestCase):
    """Unit test class of the adaptive loop"""

    def setUp(self):
        os.makedirs(TMP_DIR, exist_ok=True)

    def tearDown(self):
        shutil.rmtree(TMP_DIR, ignore_errors=True)

    def test_zero_data(self):
        """Test that vanishing indicators stop the loop reporting stagnation"""
        for iterations in (1, 3):
            result = run_adaptive(zero_data(example1()), 1.5, iterations, mesh=criss_cross_square(2), quad_degree=5)
            assert result.stagnated
            assert len(result.records) == 1
            assert result.records[0].est_total == 0.0
            assert result.marked == []

    def test_small_run(self):
        """Test records, refinement and observers of a short run"""
        observer = RecordingObserver()
        result = run_adaptive(example1(), 1.6, 4, mesh=criss_cross_square(2), quad_degree=5, observers=[observer])
        assert not result.stagnated
        assert [record.iteration for record in result.records] == [1, 2, 3, 4]
        ndofs = [record.ndof for record in result.records]
        assert all(later > earlier for earlier, later in zip(ndofs, ndofs[1:]))
        elements = [record.elements for record in result.records]
        assert elements[0] == 16
        assert result.mesh.num_triangles == elements[-1]
        assert len(result.marked) == 3
        for record in result.records:
            assert record.picard_iters >= 1
            assert record.est_total == record.est_heat + record.est_curl + record.est_pressure
            assert record.wall_time >= 0.0
        assert [call[1] for call in observer.calls] == elements
        assert all(call[2] == call[1] for call in observer.calls)
        assert len(result.indicators) == result.mesh.num_triangles

    def test_deterministic(self):
        """Test that two runs produce identical records"""
        runs = []
        for _ in range(2):
            result = run_adaptive(example2(), 1.4, 3, quad_degree=5)
            runs.append([{key: value for key, value in asdict(record).items() if key != 'wall_time'}
                         for record in result.records])
        assert runs[0] == runs[1]

    def test_max_ndof(self):
        """Test that the DOF cap stops the loop"""
        result = run_adaptive(example1(), 1.6, 10, mesh=criss_cross_square(2), quad_degree=5, max_ndof=1)
        assert len(result.records) == 1
        assert not result.stagnated

    def test_oscillation(self):
        """Test that the data oscillation is recorded without changing the refinement"""
        plain = run_adaptive(example1(), 1.6, 3, mesh=criss_cross_square(2), quad_degree=5)
        reported = run_adaptive(example1(), 1.6, 3, mesh=criss_cross_square(2), quad_degree=5, oscillation=True)
        assert all(record.est_osc is None for record in plain.records)
        assert all(record.est_osc > 0.0 for record in reported.records)
        assert [record.est_total for record in reported.records] == [record.est_total for record in plain.records]
        for marked, expected in zip(reported.marked, plain.marked):
            assert np.array_equal(marked, expected)
        assert np.isclose(reported.indicators.oscillation_estimator, reported.records[-1].est_osc)
        assert plain.indicators.oscillation_estimator is None

    def test_picard_failure(self):
        """Test that a Picard failure carries the finished records"""
        with self.assertRaises(AdaptiveRunError) as context:
            run_adaptive(example1(), 1.6, 3, mesh=criss_cross_square(2), quad_degree=5, max_picard=1)
        assert context.exception.records == []
        assert context.exception.report.iterations == 1

    def test_invalid_iterations(self):
        """Test that at least one iteration is required"""
        self.assertRaises(ValueError, run_adaptive, example1(), 1.6, 0)

    def test_writers(self):
        """Test the CSV and VTK observers"""
        with ConvergenceWriter(TMP_DIR) as csv_writer, VtkWriter(TMP_DIR, every=2) as vtk_writer:
            result = run_adaptive(example1(), 1.6, 3, mesh=criss_cross_square(2), quad_degree=5,
                                  observers=[csv_writer, vtk_writer])
            csv_writer.done()
            vtk_writer.done()
        with open(csv_writer.path) as r_file:
            assert r_file.readline().strip() == ','.join(CSV_HEADER)
        rows = read_convergence(csv_writer.path)
        assert [row['iter'] for row in rows] == [1, 2, 3]
        assert [row['ndof'] for row in rows] == [record.ndof for record in result.records]
        assert [row['est_total'] for row in rows] == [record.est_total for record in result.records]
        assert sorted(os.path.basename(path) for path in vtk_writer.written) == ['mesh_0002.vtk', 'solution_0002.vtk']
        for path in vtk_writer.written:
            assert os.path.exists(path)


class TestFitSlope(unittest.TestCase):
    """Unit test class of the decay slope fit"""

    def test_power_law(self):
        """Test an exact power law"""
        ndofs = np.array([100, 200, 400, 800, 1600])
        self.assertAlmostEqual(fit_slope(ndofs, 3.0 * ndofs ** -0.5), -0.5, delta=1e-12)

    def test_last_points(self):
        """Test that only the last points are fitted"""
        ndofs = np.array([10, 20, 40, 80, 160, 320])
        values = np.concatenate(([1.0, 1.0], 2.0 * ndofs[2:] ** -0.25))
        self.assertAlmostEqual(fit_slope(ndofs, values, last=4), -0.25, delta=1e-12)

    def test_too_few(self):
        """Test that one point is not enough"""
        self.assertRaises(ValueError, fit_slope, [10], [1.0])


if __name__ == '__main__':
    unittest.main()
