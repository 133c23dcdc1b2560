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

import itertools
import math
import unittest
from unittest import mock
import numpy as np
from hypothesis import given, settings, strategies as st
from pyvecopt import examples
from pyvecopt.calculus import Cone, Polytope
from pyvecopt.errors import InfeasiblePointError, InputError, NumericalError
from pyvecopt.expr import Constant, IntPow, Sin, Variable, variables
from pyvecopt.minnorm import (RabierMode, gamma_residual, min_norm_point, rabier, rabier_nu,
                              rabier_polytopes, stationarity_gap)
from pyvecopt.oracle import brute_min_norm
from pyvecopt.problem import Box, Problem


def random_instance(rng):
    """Random polytopes and a polyhedral cone small enough for brute force."""
    n = int(rng.integers(1, 4))
    m = int(rng.integers(1, 4))
    counts = [1] * m
    for _ in range(int(rng.integers(0, 5 - m))):
        counts[int(rng.integers(m))] += 1
    polytopes = [Polytope(rng.uniform(-0.25, 0.25, size=(c, n))) for c in counts]
    rays = []
    for _ in range(int(rng.integers(0, 4))):
        r = rng.integers(-1, 2, size=n).astype(float)
        if np.any(r):
            rays.append(r)
    return polytopes, Cone(rays, dim=n)


class MinNormPointTest(unittest.TestCase):

    def test_segment(self):
        r = min_norm_point(Polytope([[1.0, 0.0], [0.0, 1.0]]))
        self.assertAlmostEqual(math.sqrt(0.5), r.value, places=12)
        np.testing.assert_allclose([0.5, 0.5], r.point, atol=1e-12)
        np.testing.assert_allclose([0.5, 0.5], r.hull_coeffs, atol=1e-12)

    def test_origin_inside(self):
        r = min_norm_point(Polytope([[-2.0], [1.0]]))
        self.assertAlmostEqual(0.0, r.value, places=12)
        np.testing.assert_allclose([1.0 / 3.0, 2.0 / 3.0], r.hull_coeffs, atol=1e-12)

    def test_with_cone(self):
        r = min_norm_point(Polytope([[1.0, 1.0]]), Cone([[-1.0, 0.0]]))
        self.assertAlmostEqual(1.0, r.value, places=9)
        np.testing.assert_allclose([0.0, 1.0], r.point, atol=1e-9)
        np.testing.assert_allclose([1.0], r.cone_coeffs, atol=1e-9)

    def test_dimension_mismatch(self):
        with self.assertRaises(InputError):
            min_norm_point(Polytope([[1.0, 1.0]]), Cone(dim=3))
        with self.assertRaises(InputError):
            min_norm_point(Polytope([[1.0]]), tol=0.0)

    def test_stall_raises(self):
        def inexact(q):
            return np.ones(1) if len(q) == 1 else np.array([0.6, 0.4])

        with mock.patch('pyvecopt.minnorm._affine_min', inexact):
            with self.assertLogs('pyvecopt.minnorm', level='WARNING'):
                with self.assertRaises(NumericalError) as cm:
                    min_norm_point(Polytope([[1.0, 0.0], [0.0, 1.0]]))
        self.assertAlmostEqual(0.12, cm.exception.best.gap, places=12)

    def test_overflow(self):
        with self.assertRaises(NumericalError):
            rabier_nu(examples.get('quadratic'), [1e200])

    def test_certificate(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            polytopes, cone = random_instance(rng)
            p = polytopes[0].hull(*polytopes[1:])
            r = min_norm_point(p, cone)
            z = r.point
            np.testing.assert_allclose(z, r.hull_coeffs @ p.vertices + r.cone_coeffs @ cone.rays, atol=1e-9)
            self.assertAlmostEqual(1.0, float(np.sum(r.hull_coeffs)), places=9)
            self.assertTrue(np.all(r.hull_coeffs >= -1e-12))
            self.assertTrue(np.all(r.cone_coeffs >= -1e-12))
            self.assertTrue(np.all(p.vertices @ z >= z @ z - 1e-8))
            if len(cone):
                self.assertTrue(np.all(cone.rays @ z >= -1e-8))


class RabierTest(unittest.TestCase):

    def test_quadratic(self):
        self.assertAlmostEqual(6.0, rabier_nu(examples.get('quadratic'), [3.0]), places=12)

    def test_smooth_identity(self):
        rng = np.random.default_rng(7)
        x1, = variables(1)
        for _ in range(100):
            a, b, c = rng.uniform(-3.0, 3.0, size=3)
            f = Constant(a) * IntPow(x1, 3) + Constant(b) * Sin(x1) + Constant(c)
            problem = Problem(1, 1, (f,))
            x = float(rng.uniform(-2.0, 2.0))
            expect = abs(3.0 * a * x * x + b * math.cos(x))
            self.assertLessEqual(abs(rabier_nu(problem, [x]) - expect), 1e-8)

    def test_modes(self):
        x1, = variables(1)
        problem = Problem(1, 2, (x1, x1))
        self.assertAlmostEqual(0.0, rabier_nu(problem, [0.0], RabierMode.FULL), places=12)
        self.assertAlmostEqual(1.0, rabier_nu(problem, [0.0], 'plus-only'), places=12)

    def test_mode_parse(self):
        self.assertIs(RabierMode.PLUS_ONLY, RabierMode.parse('plus_only'))
        self.assertEqual(4, len(RabierMode.FULL.sign_patterns(2)))
        self.assertEqual([(1, 1)], RabierMode.PLUS_ONLY.sign_patterns(2))
        with self.assertRaises(InputError):
            RabierMode.parse('minus')

    def test_multipliers(self):
        x1, = variables(1)
        problem = Problem(1, 2, (x1, -x1 * 2))
        r = rabier(problem, [0.0], 'plus-only')
        self.assertAlmostEqual(0.0, r.value, places=12)
        np.testing.assert_allclose([2.0 / 3.0, 1.0 / 3.0], r.lambdas, atol=1e-12)
        self.assertEqual(0.0, r.mu)

    def test_boundary(self):
        p = Problem(1, 1, (Variable(0),), Box((0.0,), (math.inf,)))
        self.assertAlmostEqual(0.0, rabier_nu(p, [0.0]), places=9)
        self.assertAlmostEqual(1.0, rabier_nu(p, [1.0]), places=12)
        with self.assertRaises(InfeasiblePointError):
            rabier_nu(p, [-1.0])

    def test_example_pareto_critical(self):
        self.assertAlmostEqual(0.0, rabier_nu(examples.get('ex41'), [1.0]), places=12)

    def test_stationarity_gap(self):
        nu, critical = stationarity_gap(examples.get('quadratic'), [0.0])
        self.assertEqual(0.0, nu)
        self.assertTrue(critical)
        nu, critical = stationarity_gap(examples.get('quadratic'), [1.0])
        self.assertFalse(critical)

    def test_gamma_residual(self):
        identity = examples.get('identity')
        r = rabier(identity, [2.0], gamma=True)
        self.assertAlmostEqual(0.0, r.value, places=12)
        self.assertAlmostEqual(1.0, float(np.sum(r.lambdas)) + abs(r.mu), places=12)
        self.assertAlmostEqual(0.0, r.signs[0] * float(r.lambdas[0]) + 2.0 * r.mu, places=12)
        linear2 = examples.get('linear2')
        self.assertAlmostEqual(1.0, gamma_residual(linear2, [1.0, -1.0]), places=9)
        self.assertAlmostEqual(0.0, gamma_residual(linear2, [2.0, 2.0]), places=12)

    def test_brute_force_agreement(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            polytopes, cone = random_instance(rng)
            r = rabier_polytopes(polytopes, cone)
            brute = math.inf
            for signs in itertools.product((1, -1), repeat=len(polytopes)):
                union = Polytope(np.vstack([s * p.vertices for s, p in zip(signs, polytopes)]))
                brute = min(brute, brute_min_norm(union, cone, 0.02, ray_cap=100.0))
            self.assertLessEqual(r.value, brute + 1e-8)
            self.assertLessEqual(brute - r.value, 0.02 + 1e-8)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=-10.0, max_value=10.0), st.floats(min_value=-10.0, max_value=10.0))
    def test_rabier_nonnegative_and_symmetric(self, a, b):
        polytopes = [Polytope([[a]]), Polytope([[b]])]
        full = rabier_polytopes(polytopes, Cone(dim=1)).value
        plus = rabier_polytopes(polytopes, Cone(dim=1), RabierMode.PLUS_ONLY).value
        self.assertGreaterEqual(full, 0.0)
        self.assertLessEqual(full, plus + 1e-12)
        self.assertAlmostEqual(full, rabier_polytopes([Polytope([[-a]]), Polytope([[b]])], Cone(dim=1)).value,
                               places=9)


if __name__ == '__main__':
    unittest.main()
