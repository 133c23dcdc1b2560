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
from hypothesis import given, strategies as st
from pyvecopt import examples
from pyvecopt.asymptotics import DEFAULT_SCHEDULE
from pyvecopt.efficiency import (ScalarizationConfig, dominates, geoffrion_check, geoffrion_existence_report,
                                 geoffrion_level, oracle_grid, pareto_existence_report, pareto_front,
                                 pareto_verify, recession_probe, scalarize_solve, weight_grid)
from pyvecopt.errors import (InfeasibleProblemError, InfeasiblePointError, InputError,
                             ParetoViolationError)
from pyvecopt.problem import Box, SublevelBound


BOX = [(-5.0, 5.0)]
vectors = st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3)


def ex41_grid():
    return np.linspace(0.0, 10.0, 10001).reshape((-1, 1))


class DominatesTest(unittest.TestCase):

    def test_examples(self):
        self.assertTrue(dominates([1, 2], [1, 3]))
        self.assertFalse(dominates([1, 2], [1, 2]))
        self.assertFalse(dominates([1, 3], [2, 2]))
        self.assertTrue(dominates(0.0, 1.0))

    def test_mismatch(self):
        with self.assertRaises(InputError):
            dominates([1, 2], [1, 2, 3])

    @given(vectors, vectors, vectors)
    def test_strict_partial_order(self, a, b, c):
        self.assertFalse(dominates(a, a))
        if dominates(a, b):
            self.assertFalse(dominates(b, a))
            if dominates(b, c):
                self.assertTrue(dominates(a, c))


class ParetoVerifyTest(unittest.TestCase):

    def test_dominated(self):
        v = pareto_verify(examples.get('quadratic'), [1.0], [[2.0], [0.0], [0.5]])
        self.assertFalse(v.holds)
        self.assertEqual((0.0,), v.witness[0].x)

    def test_pareto(self):
        v = pareto_verify(examples.get('ex41'), [1.0], ex41_grid())
        self.assertTrue(v.holds)
        self.assertEqual((), v.witness)

    def test_infeasible_samples_ignored(self):
        v = pareto_verify(examples.get('ex41'), [1.0], [[-3.0]])
        self.assertTrue(v.holds)

    def test_infeasible_point(self):
        with self.assertRaises(InfeasiblePointError):
            pareto_verify(examples.get('ex41'), [-1.0], ex41_grid())


class GeoffrionTest(unittest.TestCase):

    def test_single_sample(self):
        problem = examples.get('ex41')
        self.assertAlmostEqual(21.0, geoffrion_level(problem, [1.0], [[20.0]]), places=9)
        r = geoffrion_check(problem, [1.0], 10.0, [[20.0]])
        self.assertFalse(r.consistent)
        self.assertEqual((20.0,), r.x)
        self.assertEqual(0, r.index)
        self.assertAlmostEqual(21.0, r.min_ratio, places=9)
        self.assertEqual('violation', r.to_dict()['status'])

    def test_first_violation_on_grid(self):
        r = geoffrion_check(examples.get('ex41'), [1.0], 10.0, ex41_grid())
        self.assertFalse(r.consistent)
        x = r.x[0]
        self.assertGreaterEqual(x, 9.0 - 1e-9)
        self.assertLessEqual(x, 9.001 + 1e-9)
        self.assertAlmostEqual(x + 1.0, r.min_ratio, places=6)
        self.assertAlmostEqual(11.0, r.level, places=6)

    def test_proper_on_both_sides(self):
        samples = np.linspace(-5.0, 5.0, 10001).reshape((-1, 1))
        r = geoffrion_check(examples.get('remark41'), [-0.5], 1.01, samples)
        self.assertTrue(r.consistent)
        self.assertLess(r.level, 1.0)
        self.assertEqual('consistent_up_to', r.to_dict()['status'])

    def test_monotone_in_M(self):
        problem = examples.get('ex41')
        samples = ex41_grid()
        for M in [1.0, 5.0, 10.0, 11.5, 23.0, 100.0]:
            r = geoffrion_check(problem, [1.0], M, samples)
            if r.consistent:
                self.assertTrue(geoffrion_check(problem, [1.0], 2 * M, samples).consistent)
            self.assertEqual(M >= 11.0, r.consistent)

    def test_dominated(self):
        with self.assertRaises(ParetoViolationError):
            geoffrion_check(examples.get('quadratic'), [1.0], 10.0, [[0.0]])

    def test_invalid_M(self):
        with self.assertRaises(InputError):
            geoffrion_check(examples.get('ex41'), [1.0], 0.0, [[2.0]])


class ScalarizeTest(unittest.TestCase):

    def test_config(self):
        with self.assertRaises(InputError):
            ScalarizationConfig((0.5, 0.0), box=BOX)
        with self.assertRaises(InputError):
            ScalarizationConfig((1.0,))
        with self.assertRaises(InputError):
            scalarize_solve(examples.get('quadratic'), ScalarizationConfig((0.5, 0.5), box=BOX))

    def test_oracle_grid(self):
        self.assertEqual((10001,), oracle_grid(Box((0.0,), (1.0,))).steps)
        self.assertEqual((100, 100), oracle_grid(Box((0.0, 0.0), (1.0, 1.0))).steps)
        self.assertEqual((11,), oracle_grid(Box((0.0,), (1.0,)), 0.1).steps)

    def test_quadratic(self):
        r = scalarize_solve(examples.get('quadratic'), ScalarizationConfig((1.0,), box=[(-3.0, 3.0)], starts=4))
        self.assertAlmostEqual(0.0, r.x[0], places=6)
        self.assertTrue(r.verdict.holds)

    def test_weighted(self):
        r = scalarize_solve(examples.get('remark41'), ScalarizationConfig((0.5, 0.5), box=BOX, starts=8))
        self.assertAlmostEqual(-0.5, r.x[0], delta=1e-6)
        np.testing.assert_allclose([-0.5, 0.25], r.f, atol=1e-6)
        self.assertAlmostEqual(-0.125, r.value, places=6)
        self.assertTrue(r.verdict.holds)

    def test_sublevel(self):
        cfg = ScalarizationConfig((0.5, 0.5), ybar=SublevelBound((np.inf, 0.01)), box=BOX, starts=8)
        r = scalarize_solve(examples.get('remark41'), cfg)
        self.assertAlmostEqual(-0.1, r.x[0], delta=1e-4)
        self.assertTrue(r.verdict.holds)

    def test_unit_weights_with_sublevel(self):
        cfg = ScalarizationConfig((1.0, 1.0), ybar=SublevelBound((0.0, 1.0)), box=BOX, starts=8)
        r = scalarize_solve(examples.get('remark41'), cfg)
        self.assertAlmostEqual(-0.5, r.x[0], delta=1e-6)
        self.assertTrue(r.verdict.holds)

    def test_sublevel_boundary_minimum(self):
        cfg = ScalarizationConfig((2.0, 1.0), ybar=SublevelBound((0.0, 1.0)), box=BOX, starts=8)
        r = scalarize_solve(examples.get('remark41'), cfg)
        self.assertAlmostEqual(-1.0, r.x[0], delta=1e-6)
        self.assertAlmostEqual(-1.0, r.value, delta=1e-6)

    def test_singleton_sublevel(self):
        cfg = ScalarizationConfig((0.5, 0.5), ybar=SublevelBound((-4.0, 2.0)), box=[(0.0, 5.0)], starts=8)
        r = scalarize_solve(examples.get('ex41'), cfg)
        self.assertAlmostEqual(2.0, r.x[0], delta=1e-6)
        self.assertTrue(r.verdict.holds)

    def test_empty_sublevel(self):
        cfg = ScalarizationConfig((1.0,), ybar=SublevelBound((-1.0,)), box=BOX, starts=4)
        with self.assertRaises(InfeasibleProblemError):
            scalarize_solve(examples.get('quadratic'), cfg)

    def test_weight_grid(self):
        self.assertEqual([(0.25, 0.75), (0.5, 0.5), (0.75, 0.25)], weight_grid(2, 4))
        self.assertEqual(1, len(weight_grid(3, 3)))
        self.assertEqual(6, len(weight_grid(3, 5)))
        with self.assertRaises(InputError):
            weight_grid(3, 2)

    def test_front(self):
        cfg = ScalarizationConfig((0.5, 0.5), box=BOX, starts=8)
        front = pareto_front(examples.get('remark41'), None, weight_grid(2, 4), cfg)
        self.assertEqual((), front.failures)
        x = sorted(p.x[0] for p in front.points)
        np.testing.assert_allclose([-1.5, -0.5, -1.0 / 6.0], x, atol=1e-5)


class ExistenceTest(unittest.TestCase):

    def test_recession_witness(self):
        r = recession_probe(examples.get('ex41'))
        self.assertFalse(r.eq8_holds)
        np.testing.assert_allclose([-1.0, 0.0], r.witness, atol=1e-12)

    def test_recession_holds(self):
        r = recession_probe(examples.get('remark41'))
        self.assertTrue(r.eq8_holds)
        self.assertIsNone(r.witness)
        self.assertTrue(any(np.linalg.norm(np.subtract(d, [0.0, 1.0])) <= 1e-3 for d in r.directions))

    def test_recession_scale_invariant(self):
        schedule = DEFAULT_SCHEDULE.scaled(4.0)
        for name in ('ex41', 'remark41', 'quadratic'):
            problem = examples.get(name)
            a = recession_probe(problem)
            b = recession_probe(problem, schedule)
            self.assertEqual(a.eq8_holds, b.eq8_holds, name)
            if a.witness is not None:
                np.testing.assert_allclose(a.witness, b.witness, atol=1e-6)

    def test_geoffrion_refuted(self):
        r = geoffrion_existence_report(examples.get('ex41'))
        self.assertEqual('refuted', r.status)
        self.assertEqual('refuted', r.to_dict()['status'])

    def test_geoffrion_sufficient(self):
        for name in ('remark41', 'quadratic'):
            r = geoffrion_existence_report(examples.get(name))
            self.assertTrue(r.recession.eq8_holds, name)
            self.assertEqual('sufficient', r.status, name)
            self.assertTrue(r.levels)

    def test_pareto_existence(self):
        r = pareto_existence_report(examples.get('quadratic'), (1.0,), [(-2.0, 2.0)])
        self.assertTrue(r.section.holds)
        self.assertTrue(r.consistent)
        self.assertTrue(r.exists)
        self.assertTrue(r.kzero.contains((0.0,), 1e-2))


if __name__ == '__main__':
    unittest.main()
