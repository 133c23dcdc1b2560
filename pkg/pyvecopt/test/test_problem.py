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

import math
import unittest
import numpy as np
from pyvecopt.errors import InputError
from pyvecopt.expr import Abs, Variable, variables
from pyvecopt.problem import (Box, FullSpace, Polyhedron, Problem, SmoothIneq, SublevelBound,
                              evaluate, is_feasible, sublevel_mask, sublevel_member)


class FeasibleSetTest(unittest.TestCase):

    def test_full_space(self):
        s = FullSpace(2)
        self.assertTrue(s.contains([1e9, -1e9]))
        np.testing.assert_array_equal([3.0, 4.0], s.project([3.0, 4.0]))

    def test_box(self):
        b = Box((0.0, -1.0), (math.inf, 1.0))
        self.assertEqual(2, b.dim)
        self.assertTrue(b.contains([5.0, 1.0]))
        self.assertFalse(b.contains([-0.1, 0.0]))
        self.assertTrue(b.contains([-0.1, 0.0], tol=0.2))
        np.testing.assert_array_equal([0.0, 1.0], b.project([-3.0, 7.0]))
        np.testing.assert_array_equal([True, False], b.contains_array(np.array([[1.0, 0.0], [1.0, 2.0]])))

    def test_box_invalid(self):
        with self.assertRaises(InputError):
            Box((1.0,), (0.0,))
        with self.assertRaises(InputError):
            Box((0.0, 1.0), (1.0,))

    def test_polyhedron(self):
        p = Polyhedron(((1.0, 1.0),), (1.0,))
        self.assertTrue(p.contains([0.5, 0.5]))
        self.assertFalse(p.contains([1.0, 1.0]))
        y = p.project([1.0, 1.0])
        np.testing.assert_allclose([0.5, 0.5], y)
        self.assertTrue(p.contains(y, 1e-12))

    def test_polyhedron_zero_normal(self):
        with self.assertRaises(InputError):
            Polyhedron(((0.0, 0.0),), (1.0,))

    def test_smooth_ineq(self):
        x1, x2 = variables(2)
        s = SmoothIneq((x1 ** 2 + x2 ** 2 - 1,))
        self.assertTrue(s.contains([0.6, 0.8]))
        self.assertFalse(s.contains([1.0, 1.0]))
        with self.assertRaises(InputError):
            SmoothIneq((Abs(x1) - 1,))

    def test_is_feasible_negative_tol(self):
        with self.assertRaises(InputError):
            is_feasible(FullSpace(), [0.0], -1.0)


class ProblemTest(unittest.TestCase):

    def setUp(self):
        x = Variable(0)
        self.p = Problem(1, 2, (-x ** 2, x), Box((0.0,), (math.inf,)))

    def test_evaluate(self):
        np.testing.assert_array_equal([-4.0, 2.0], evaluate(self.p, [2.0]))
        np.testing.assert_array_equal([[-1.0, 1.0], [-9.0, 3.0]], self.p.evaluate_array(np.array([[1.0], [3.0]])))

    def test_dimension_mismatch(self):
        with self.assertRaises(InputError):
            self.p.evaluate([1.0, 2.0])
        with self.assertRaises(InputError):
            Problem(1, 1, (Variable(1),))
        with self.assertRaises(InputError):
            Problem(1, 2, (Variable(0),))

    def test_sublevel_member(self):
        self.assertTrue(sublevel_member(self.p, (-4.0, 2.0), [2.0]))
        self.assertFalse(sublevel_member(self.p, (-4.0, 2.0), [2.5]))
        self.assertFalse(sublevel_member(self.p, (-4.0, 2.0), [1.5]))
        self.assertFalse(sublevel_member(self.p, (math.inf, math.inf), [-1.0]))
        self.assertTrue(self.p.sublevel_member(SublevelBound.unrestricted(2), [100.0]))

    def test_sublevel_mask(self):
        x = np.array([[1.0], [2.0], [3.0]])
        mask = sublevel_mask(self.p, SublevelBound((-4.0, 2.5)), x, self.p.evaluate_array(x))
        np.testing.assert_array_equal([False, True, False], mask)

    def test_sublevel_bound(self):
        b = SublevelBound((1.0, math.inf))
        self.assertFalse(b.is_finite())
        self.assertFalse(b.is_unrestricted())
        self.assertEqual(1.0, b.finite_norm())
        self.assertTrue(SublevelBound.unrestricted(3).is_unrestricted())
        with self.assertRaises(InputError):
            SublevelBound((-math.inf,))


if __name__ == '__main__':
    unittest.main()
