# Copyright 2021 Jetperch LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import unittest
import numpy as np
from pyvecopt.calculus import Cone, Polytope, gradient, neg_subdiff, normal_cone, subdiff, value_and_subdiff
from pyvecopt.errors import DegenerateConstraintError, InfeasiblePointError, InputError, NumericalError
from pyvecopt.expr import Abs, Exp, IntPow, Max, Min, Mul, Sin, Variable, variables
from pyvecopt.problem import Box, FullSpace, Polyhedron, SmoothIneq
from pyvecopt.test.test_expr import random_smooth_tree


def central_difference(f, x, h=1e-6):
    g = np.zeros(len(x))
    for i in range(len(x)):
        e = np.zeros(len(x))
        e[i] = h
        g[i] = (f.evaluate(x + e) - f.evaluate(x - e)) / (2 * h)
    return g


class PolytopeTest(unittest.TestCase):

    def test_dedup(self):
        p = Polytope([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        self.assertEqual(2, len(p))
        self.assertEqual({(1.0, 0.0), (0.0, 1.0)}, p.vertex_set())

    def test_minkowski(self):
        p = Polytope([[0.0], [1.0]]).minkowski(Polytope([[10.0], [20.0]]))
        self.assertEqual({(10.0,), (11.0,), (20.0,), (21.0,)}, p.vertex_set())

    def test_neg_and_hull(self):
        p = Polytope([[1.0, 2.0]])
        self.assertEqual({(-1.0, -2.0)}, (-p).vertex_set())
        self.assertEqual({(1.0, 2.0), (-1.0, -2.0)}, p.hull(-p).vertex_set())

    def test_large_sets_pruned(self):
        theta = np.linspace(0, 2 * np.pi, 100, endpoint=False)
        ring = np.column_stack((np.cos(theta), np.sin(theta)))
        inner = 0.1 * ring
        p = Polytope(np.vstack((ring, inner)))
        self.assertEqual(100, len(p))

    def test_invalid(self):
        with self.assertRaises(InputError):
            Polytope(np.empty((0, 2)))
        with self.assertRaises(InputError):
            Polytope([[np.nan]])
        with self.assertRaises(InputError):
            Cone([[0.0, 0.0]])
        with self.assertRaises(InputError):
            Cone()

    def test_trivial_cone(self):
        c = Cone(dim=3)
        self.assertTrue(c.is_trivial())
        self.assertEqual(3, c.dim)


class SubdiffTest(unittest.TestCase):

    def test_abs_at_zero(self):
        p = subdiff(Abs(Variable(0)), [0.0])
        self.assertEqual({(-1.0,), (1.0,)}, p.vertex_set())

    def test_abs_away_from_zero(self):
        self.assertEqual({(1.0,)}, subdiff(Abs(Variable(0)), [2.0]).vertex_set())
        self.assertEqual({(-1.0,)}, subdiff(Abs(Variable(0)), [-2.0]).vertex_set())

    def test_max_tie(self):
        x1, x2 = variables(2)
        p = subdiff(Max((x1, x2)), [1.0, 1.0])
        self.assertEqual({(1.0, 0.0), (0.0, 1.0)}, p.vertex_set())
        p = subdiff(Max((x1, x2)), [1.0, 0.0])
        self.assertEqual({(1.0, 0.0)}, p.vertex_set())

    def test_min_tie(self):
        x1, x2 = variables(2)
        p = subdiff(Min((x1, -x2)), [0.0, 0.0])
        self.assertEqual({(1.0, 0.0), (0.0, -1.0)}, p.vertex_set())

    def test_tie_tolerance(self):
        x1, x2 = variables(2)
        p = subdiff(Max((x1, x2)), [1.0, 1.0 - 1e-12])
        self.assertEqual(2, len(p))
        p = subdiff(Max((x1, x2)), [1.0, 1.0 - 1e-12], tie_tol=0.0)
        self.assertEqual(1, len(p))

    def test_sum_of_abs(self):
        x1, x2 = variables(2)
        p = subdiff(Abs(x1) + Abs(x2), [0.0, 0.0])
        self.assertEqual({(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)}, p.vertex_set())

    def test_neg_subdiff(self):
        p = neg_subdiff(Variable(0) ** 2, [3.0])
        self.assertEqual({(-6.0,)}, p.vertex_set())

    def test_value(self):
        v, p = value_and_subdiff(Sin(Variable(0)), [0.0])
        self.assertEqual(0.0, v)
        self.assertEqual({(1.0,)}, p.vertex_set())

    def test_nonfinite_point(self):
        with self.assertRaises(InputError):
            subdiff(Variable(0), [np.inf])

    def test_overflow(self):
        x = Variable(0)
        for expr, point in [(IntPow(x, 3), 1e200), (Exp(x), 1000.0), (Mul((x, x, x)), 1e200)]:
            with self.assertRaises(NumericalError):
                subdiff(expr, [point])

    def test_smooth_matches_finite_difference(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            f = random_smooth_tree(rng)
            x = rng.uniform(-1.0, 1.0, size=2)
            p = subdiff(f, x)
            self.assertTrue(p.is_singleton())
            np.testing.assert_allclose(central_difference(f, x), gradient(f, x), rtol=1e-6, atol=1e-6)


class NormalConeTest(unittest.TestCase):

    def test_full_space(self):
        self.assertTrue(normal_cone(FullSpace(2), [1.0, 2.0]).is_trivial())

    def test_box(self):
        b = Box((0.0, 0.0), (1.0, np.inf))
        self.assertEqual({(-1.0, 0.0), (0.0, -1.0)}, normal_cone(b, [0.0, 0.0]).ray_set())
        self.assertEqual({(1.0, 0.0)}, normal_cone(b, [1.0, 5.0]).ray_set())
        self.assertTrue(normal_cone(b, [0.5, 5.0]).is_trivial())

    def test_polyhedron(self):
        p = Polyhedron(((1.0, 1.0), (-1.0, 0.0)), (1.0, 0.0))
        self.assertEqual({(1.0, 1.0)}, normal_cone(p, [0.5, 0.5]).ray_set())
        self.assertEqual({(1.0, 1.0), (-1.0, 0.0)}, normal_cone(p, [0.0, 1.0]).ray_set())

    def test_smooth(self):
        x1, x2 = variables(2)
        s = SmoothIneq((x1 ** 2 + x2 ** 2 - 1,))
        self.assertEqual({(0.0, 2.0)}, normal_cone(s, [0.0, 1.0]).ray_set())

    def test_degenerate(self):
        x1, = variables(1)
        s = SmoothIneq((x1, 2 * x1))
        with self.assertRaises(DegenerateConstraintError):
            normal_cone(s, [0.0])

    def test_infeasible(self):
        with self.assertRaises(InfeasiblePointError):
            normal_cone(Box((0.0,), (1.0,)), [2.0])


if __name__ == '__main__':
    unittest.main()
