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
from hypothesis import given, strategies as st
from pyvecopt.errors import InputError
from pyvecopt.expr import Abs, Add, Constant, Cos, Exp, IntPow, Max, Min, Mul, Neg, Sin, Variable, variables


def random_smooth_tree(rng, n=2, depth=3):
    """Build a random smooth expression over x_0, ..., x_{n-1} with bounded growth."""
    if depth == 0 or rng.random() < 0.2:
        if rng.random() < 0.6:
            return Variable(int(rng.integers(n)))
        return Constant(float(rng.uniform(-1.0, 1.0)))
    kind = int(rng.integers(6))
    child = lambda: random_smooth_tree(rng, n, depth - 1)
    if kind == 0:
        return Add(tuple(child() for _ in range(int(rng.integers(2, 4)))))
    if kind == 1:
        return Mul((child(), child()))
    if kind == 2:
        return Neg(child())
    if kind == 3:
        return Sin(child())
    if kind == 4:
        return Cos(child())
    return IntPow(child(), int(rng.integers(0, 3)))


class ExprTest(unittest.TestCase):

    def test_evaluate(self):
        x1, x2 = variables(2)
        f = x1 * x2 + Sin(x1) - 3
        self.assertAlmostEqual(2.0 * 5.0 + math.sin(2.0) - 3.0, f.evaluate([2.0, 5.0]))

    def test_operators_build_nodes(self):
        x1, = variables(1)
        self.assertEqual(Add((x1, Constant(1.0))), x1 + 1)
        self.assertEqual(Add((x1, Neg(Constant(2.0)))), x1 - 2)
        self.assertEqual(Mul((Constant(3.0), x1)), 3 * x1)
        self.assertEqual(IntPow(x1, 2), x1 ** 2)
        self.assertEqual(Neg(x1), -x1)

    def test_max_min_abs(self):
        x1, x2 = variables(2)
        x = [-3.0, 1.0]
        self.assertEqual(1.0, Max((x1, x2)).evaluate(x))
        self.assertEqual(-3.0, Min((x1, x2)).evaluate(x))
        self.assertEqual(3.0, Abs(x1).evaluate(x))

    def test_abs_canonical(self):
        x1, = variables(1)
        self.assertEqual(Max((x1, Neg(x1))), Abs(x1).canonical())
        self.assertEqual(Sin(Max((x1, Neg(x1)))), Sin(Abs(x1)).canonical())

    def test_is_smooth(self):
        x1, x2 = variables(2)
        self.assertTrue((Exp(x1) * Cos(x2)).is_smooth())
        self.assertFalse((x1 + Abs(x2)).is_smooth())
        self.assertFalse(Sin(Max((x1, x2))).is_smooth())

    def test_max_variable(self):
        self.assertEqual(-1, Constant(1.0).max_variable())
        self.assertEqual(4, (Variable(4) + Variable(1)).max_variable())

    def test_exp_overflow(self):
        self.assertEqual(math.inf, Exp(Variable(0)).evaluate([1000.0]))

    def test_invalid_nodes(self):
        with self.assertRaises(InputError):
            Constant(math.inf)
        with self.assertRaises(InputError):
            Variable(-1)
        with self.assertRaises(InputError):
            IntPow(Variable(0), -1)
        with self.assertRaises(InputError):
            Max((Variable(0),))
        with self.assertRaises(InputError):
            Add(('x',))

    def test_structural_equality(self):
        self.assertEqual(Sin(Variable(0) + 1), Sin(Variable(0) + 1))
        self.assertNotEqual(Sin(Variable(0)), Cos(Variable(0)))

    def test_evaluate_array_matches_scalar(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            f = random_smooth_tree(rng)
            x = rng.uniform(-1.0, 1.0, size=(5, 2))
            expect = np.array([f.evaluate(p) for p in x])
            np.testing.assert_allclose(expect, f.evaluate_array(x), rtol=1e-12, atol=1e-12)

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    def test_abs_canonical_value(self, x):
        f = Abs(Variable(0) * 2)
        self.assertEqual(f.evaluate([x]), f.canonical().evaluate([x]))


if __name__ == '__main__':
    unittest.main()
