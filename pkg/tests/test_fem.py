"""
This module contains white-box unit tests of the fem package
"""
# pylint: disable=W0212, C0103
import math
import unittest
import numpy as np
from thermodarcy.mesh import build_mesh, criss_cross_square, criss_cross_l_shape, bisect
from thermodarcy.fem import (
    DEFAULT_DEGREE,
    DofLayout,
    QuadratureError,
    edge_rule,
    edge_rule_for_degree,
    evaluate_grad_p1,
    evaluate_p1,
    evaluate_rt0,
    h1_seminorm_error,
    l2_error,
    p1_element_gradients,
    quadrature_rule,
    rt0_coefficients,
    rt0_divergence,
    rt0_field_values,
)

REFERENCE = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]


def monomial_integral(a: int, b: int) -> float:
    """Exact integral of x^a y^b over the reference triangle."""
    return math.factorial(a) * math.factorial(b) / math.factorial(a + b + 2)


class TestQuadrature(unittest.TestCase):
    """Unit test class of quadrature rules"""

    def test_weights(self):
        """Test that all rules have positive weights summing to one"""
        for degree in range(1, 21):
            rule = quadrature_rule(degree)
            assert rule.degree == degree
            assert np.all(rule.weights > 0)
            assert np.isclose(np.sum(rule.weights), 1.0)
            assert np.allclose(np.sum(rule.points, axis=1), 1.0)
            assert np.all(rule.points >= 0)

    def test_default_exactness(self):
        """Test exactness of the default rule on all monomials up to degree 19"""
        rule = quadrature_rule()
        assert rule.degree == DEFAULT_DEGREE == 19
        x, y = rule.points[:, 1], rule.points[:, 2]
        for a in range(20):
            for b in range(20 - a):
                approx = 0.5 * np.dot(rule.weights, x ** a * y ** b)
                self.assertAlmostEqual(approx / monomial_integral(a, b), 1.0, delta=1e-12)

    def test_low_degrees(self):
        """Test exactness of each rule up to its own degree"""
        for degree in (1, 2, 3, 4, 7):
            rule = quadrature_rule(degree)
            x, y = rule.points[:, 1], rule.points[:, 2]
            for a in range(degree + 1):
                for b in range(degree + 1 - a):
                    approx = 0.5 * np.dot(rule.weights, x ** a * y ** b)
                    assert np.isclose(approx, monomial_integral(a, b), rtol=1e-12, atol=0)

    def test_vertex_order(self):
        """Test that the conical rules are not symmetric yet exact for every vertex order"""
        for degree in (3, 8, 19):
            rule = quadrature_rule(degree)
            assert len(rule.weights) == ((degree + 2) // 2) ** 2
            assert not np.allclose(np.sort(rule.points[:, 0]), np.sort(rule.points[:, 1]))
            for order in ((1, 2, 0), (2, 0, 1), (0, 2, 1)):
                points = rule.points[:, order]
                x, y = points[:, 1], points[:, 2]
                for a in range(degree + 1):
                    b = degree - a
                    approx = 0.5 * np.dot(rule.weights, x ** a * y ** b)
                    assert np.isclose(approx, monomial_integral(a, b), rtol=1e-11, atol=0)

    def test_physical_area(self):
        """Test that the rule integrates constants to the triangle area on a physical mesh"""
        mesh = criss_cross_l_shape(1)
        rule = quadrature_rule(5)
        points = rule.physical_points(mesh.triangle_coordinates())
        assert points.shape == (mesh.num_triangles, len(rule), 2)
        assert np.isclose(np.sum(mesh.areas[:, None] * rule.weights[None, :]), mesh.area)
        # the removed quadrant carries int x = 1/2
        integral = np.sum(mesh.areas * (points[..., 0] @ rule.weights))
        assert np.isclose(integral, -0.5)

    def test_unsupported(self):
        """Test unsupported degrees"""
        for degree in (0, 21, -3):
            with self.assertRaises(QuadratureError) as context:
                quadrature_rule(degree)
            assert '1, 2, 3' in str(context.exception)

    def test_edge_rule(self):
        """Test Gauss-Legendre rules on [0, 1]"""
        rule = edge_rule()
        assert len(rule) == 10
        assert rule.degree == 19
        assert np.isclose(np.sum(rule.weights), 1.0)
        for k in range(20):
            self.assertAlmostEqual(np.dot(rule.weights, rule.points ** k), 1.0 / (k + 1), delta=1e-14)
        assert edge_rule_for_degree(19).degree >= 19
        assert edge_rule_for_degree(2).degree >= 2
        assert len(edge_rule_for_degree(1)) == 1
        self.assertRaises(QuadratureError, edge_rule, 0)


class TestRT0(unittest.TestCase):
    """Unit test class of lowest order Raviart-Thomas functions"""

    def setUp(self):
        self.reference = build_mesh(REFERENCE, [(0, 1, 2)])

    def test_reference_function(self):
        """Test the basis function of the hypotenuse of the reference triangle"""
        mesh = self.reference
        hypotenuse = mesh.triangle_edges[0, 0]
        values = np.zeros(mesh.num_edges)
        values[hypotenuse] = 1.0
        assert np.allclose(evaluate_rt0(mesh, values, 0, (1.0 / 3.0, 1.0 / 3.0)), np.sqrt(2.0) / 3.0)
        # unit normal component on the whole edge
        normal = np.array([1.0, 1.0]) / np.sqrt(2.0)
        for t in (0.0, 0.3, 1.0):
            point = (1.0 - t, t)
            self.assertAlmostEqual(np.dot(evaluate_rt0(mesh, values, 0, point), normal), 1.0, delta=1e-14)
        # zero normal component on the other two edges
        self.assertAlmostEqual(evaluate_rt0(mesh, values, 0, (0.4, 0.0))[1], 0.0, delta=1e-15)
        self.assertAlmostEqual(evaluate_rt0(mesh, values, 0, (0.0, 0.7))[0], 0.0, delta=1e-15)

    def test_zero(self):
        """Test the zero field"""
        mesh = criss_cross_square(2)
        values = np.zeros(mesh.num_edges)
        assert np.allclose(evaluate_rt0(mesh, values, 3, mesh.barycenters[3]), 0.0)
        assert np.allclose(rt0_divergence(mesh, values), 0.0)

    def test_normal_continuity(self):
        """Test continuity of the normal component across interior edges"""
        mesh = bisect(criss_cross_square(2), [1, 6])
        values = np.random.default_rng(3).standard_normal(mesh.num_edges)
        for edge in np.flatnonzero(~mesh.boundary_edges):
            start, end = mesh.vertices[mesh.edges[edge]]
            tangent = end - start
            normal = np.array([tangent[1], -tangent[0]]) / np.linalg.norm(tangent)
            plus, minus = mesh.edge_triangles[edge]
            for t in edge_rule(3).points:
                point = start + t * tangent
                left = np.dot(evaluate_rt0(mesh, values, plus, point), normal)
                right = np.dot(evaluate_rt0(mesh, values, minus, point), normal)
                self.assertAlmostEqual(left, right, delta=1e-13)
                self.assertAlmostEqual(left, values[edge], delta=1e-13)

    def test_divergence(self):
        """Test the divergence theorem on every triangle"""
        mesh = criss_cross_square(2)
        values = np.random.default_rng(5).standard_normal(mesh.num_edges)
        divergence = rt0_divergence(mesh, values)
        for element in range(mesh.num_triangles):
            flux = 0.0
            for local in range(3):
                edge = mesh.triangle_edges[element, local]
                flux += mesh.triangle_edge_signs[element, local] * mesh.edge_lengths[edge] * values[edge]
            self.assertAlmostEqual(divergence[element], flux / mesh.areas[element], delta=1e-12)

    def test_barycentric_representation(self):
        """Test that the slope/center representation matches direct evaluation"""
        mesh = criss_cross_l_shape(1)
        values = np.random.default_rng(7).standard_normal(mesh.num_edges)
        slope, center = rt0_coefficients(mesh, values)
        rule = quadrature_rule(3)
        points = rule.physical_points(mesh.triangle_coordinates())
        fast = rt0_field_values(mesh, slope, center, np.arange(mesh.num_triangles), points)
        for element in (0, 4, 9):
            for q in range(len(rule)):
                assert np.allclose(fast[element, q], evaluate_rt0(mesh, values, element, points[element, q]))
        # u(x_K) equals the stored center value
        at_barycenter = rt0_field_values(mesh, slope, center, np.arange(mesh.num_triangles), mesh.barycenters)
        assert np.allclose(at_barycenter, center)
        assert np.allclose(2.0 * slope, rt0_divergence(mesh, values))


class TestP1(unittest.TestCase):
    """Unit test class of linear Lagrange functions"""

    def test_linear(self):
        """Test interpolation of an affine function"""
        mesh = criss_cross_square(2)
        nodal = 2.0 * mesh.vertices[:, 0] - 3.0 * mesh.vertices[:, 1] + 1.0
        assert np.allclose(p1_element_gradients(mesh, nodal), (2.0, -3.0))
        for element in (0, 7, 15):
            point = np.array([0.2, 0.3, 0.5]) @ mesh.triangle_coordinates([element])[0]
            expected = 2.0 * point[0] - 3.0 * point[1] + 1.0
            self.assertAlmostEqual(evaluate_p1(mesh, nodal, element, point), expected, delta=1e-13)
            assert np.allclose(evaluate_grad_p1(mesh, nodal, element), (2.0, -3.0))

    def test_constant(self):
        """Test the partition of unity"""
        mesh = criss_cross_l_shape(1)
        nodal = np.ones(mesh.num_vertices)
        assert np.allclose(p1_element_gradients(mesh, nodal), 0.0)
        self.assertAlmostEqual(evaluate_p1(mesh, nodal, 2, mesh.barycenters[2]), 1.0, delta=1e-14)

    def test_norms(self):
        """Test error norms of an exact interpolant"""
        mesh = criss_cross_square(2)
        nodal = mesh.vertices[:, 0] + mesh.vertices[:, 1]
        rule = quadrature_rule(4)
        assert l2_error(mesh, nodal, lambda x, y: x + y, rule) < 1e-13
        assert h1_seminorm_error(mesh, nodal, lambda x, y: (np.ones_like(x), np.ones_like(y)), rule) < 1e-13
        # ||grad(x + y - 0)|| = sqrt(2) on the unit square
        zero = np.zeros(mesh.num_vertices)
        self.assertAlmostEqual(h1_seminorm_error(mesh, zero, lambda x, y: (np.ones_like(x), np.ones_like(y)), rule),
                               np.sqrt(2.0), delta=1e-12)


class TestDofLayout(unittest.TestCase):
    """Unit test class of DofLayout"""

    def test_counts(self):
        """Test DOF counts against the mesh entities"""
        mesh = criss_cross_square(2)
        layout = DofLayout(mesh)
        assert mesh.num_vertices == 13
        assert mesh.num_edges == 28
        assert layout.num_velocity == 20
        assert layout.num_pressure == 16
        assert layout.num_temperature == 5
        assert layout.ndof == 41

    def test_numbering(self):
        """Test that eliminated entities are numbered -1 and the rest consecutively"""
        mesh = criss_cross_square(3)
        layout = DofLayout(mesh)
        assert np.all(layout.edge_dofs[mesh.boundary_edges] == -1)
        assert np.all(layout.vertex_dofs[mesh.boundary_vertices] == -1)
        assert sorted(layout.edge_dofs[~mesh.boundary_edges]) == list(range(layout.num_velocity))
        assert sorted(layout.vertex_dofs[~mesh.boundary_vertices]) == list(range(layout.num_temperature))
        assert np.array_equal(layout.edge_dofs[layout.velocity_edges], np.arange(layout.num_velocity))

    def test_expand(self):
        """Test expansion of interior coefficients to all entities"""
        mesh = criss_cross_square(2)
        layout = DofLayout(mesh)
        edges = layout.expand_velocity(np.arange(1, layout.num_velocity + 1, dtype=float))
        assert np.all(edges[mesh.boundary_edges] == 0.0)
        assert np.all(edges[~mesh.boundary_edges] > 0.0)
        vertices = layout.expand_temperature(np.ones(layout.num_temperature))
        assert vertices.sum() == layout.num_temperature


if __name__ == '__main__':
    unittest.main()
