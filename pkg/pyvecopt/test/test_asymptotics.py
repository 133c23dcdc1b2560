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
from pyvecopt import examples
from pyvecopt.asymptotics import (RadiusSchedule, RabierStatistic, Status, Verdict, WitnessRecord,
                                  bounded_section_probe, k_zero_cloud, mtame_probe, properness_probe,
                                  ps_probe, shell_sampler, theorem31_crosscheck, weak_ps_probe)
from pyvecopt.errors import HypothesisError, InputError, PreconditionError


SMALL = RadiusSchedule.geometric(1.0, 2.0, 8, samples_per_shell=64)


class RadiusScheduleTest(unittest.TestCase):

    def test_geometric(self):
        s = RadiusSchedule.geometric(1.0, 2.0, 3)
        self.assertEqual((1.0, 2.0, 4.0, 8.0), s.radii)
        self.assertEqual(3, s.shell_count)
        self.assertEqual([(1.0, 2.0), (2.0, 4.0), (4.0, 8.0)], s.shells())
        self.assertFalse(s.is_outer(0))
        self.assertTrue(s.is_outer(2))
        self.assertEqual((2.0, 4.0, 8.0, 16.0), s.scaled(2.0).radii)

    def test_invalid(self):
        with self.assertRaises(InputError):
            RadiusSchedule.geometric(1.0, 1.0, 3)
        with self.assertRaises(InputError):
            RadiusSchedule((1.0, 1.0))
        with self.assertRaises(InputError):
            RadiusSchedule((1.0,))
        with self.assertRaises(InputError):
            RadiusSchedule((1.0, 2.0), samples_per_shell=0)


class VerdictTest(unittest.TestCase):

    def test_fails_requires_witness(self):
        with self.assertRaises(InputError):
            Verdict('x', Status.FAILS)
        v = Verdict('x', Status.FAILS, (WitnessRecord((1.0,), (2.0,)),))
        self.assertFalse(v.holds)
        self.assertEqual('fails_with_witness', v.to_dict()['status'])

    def test_witness_record(self):
        w = WitnessRecord((3.0, 4.0), (1.0,), shell=2, nu=0.5)
        self.assertEqual(5.0, w.norm)
        self.assertEqual(w, WitnessRecord.from_dict(w.to_dict()))


class ShellSamplerTest(unittest.TestCase):

    def test_in_shells(self):
        problem = examples.get('sin')
        for shell in shell_sampler(problem, (0.0,), SMALL, seed=1):
            r = np.linalg.norm(shell.x, axis=1)
            self.assertTrue(np.all(r >= shell.lower))
            self.assertTrue(np.all(r < shell.upper))
            self.assertTrue(np.all(shell.f <= 1e-9))
            self.assertGreater(len(shell), 0)

    def test_thread_independent(self):
        problem = examples.get('linear2')
        a = shell_sampler(problem, None, SMALL, seed=3, threads=1)
        b = shell_sampler(problem, None, SMALL, seed=3, threads=4)
        for sa, sb in zip(a, b):
            np.testing.assert_array_equal(sa.x, sb.x)

    def test_boundary_points(self):
        samples = shell_sampler(examples.get('identity'), (0.0,), SMALL)
        x = np.vstack([s.x for s in samples])
        self.assertTrue(np.all(x <= 1e-9))


class ProbeTest(unittest.TestCase):

    def test_properness(self):
        self.assertTrue(properness_probe(examples.get('quadratic')).holds)
        v = properness_probe(examples.get('linear2'))
        self.assertFalse(v.holds)
        self.assertGreaterEqual(len(v.witness), 3)

    def test_section(self):
        self.assertTrue(bounded_section_probe(examples.get('quadratic'), (1.0,)).holds)
        v = bounded_section_probe(examples.get('linear2'), (0.0,))
        self.assertFalse(v.holds)
        f = [w.f[0] for w in v.witness]
        self.assertEqual(sorted(f, reverse=True), f)
        self.assertLess(f[-1], -1e6)

    def test_section_requires_finite(self):
        with self.assertRaises(PreconditionError):
            bounded_section_probe(examples.get('remark41'), (0.0, np.inf))

    def test_ps_sin(self):
        cloud = ps_probe(examples.get('sin'), (0.0,))
        self.assertFalse(cloud.is_empty())
        for c in cloud.candidates:
            self.assertAlmostEqual(-1.0, c.y[0], delta=1e-3)
        self.assertFalse(cloud.contains((0.0,), 0.9))

    def test_weak_ps_sin(self):
        cloud = weak_ps_probe(examples.get('sin'), (0.0,))
        self.assertFalse(cloud.is_empty())
        for c in cloud.candidates:
            self.assertAlmostEqual(-1.0, c.y[0], delta=1e-3)
        self.assertFalse(cloud.contains((0.0,), 0.9))

    def test_weak_ps_inside_ps(self):
        for name, ybar in [('sin', (0.0,)), ('quadratic', (1.0,)), ('remark41', (0.0, 1.0))]:
            problem = examples.get(name)
            samples = shell_sampler(problem, ybar)
            strong = ps_probe(problem, ybar, samples=samples)
            weak = weak_ps_probe(problem, ybar, samples=samples)
            for c in weak.candidates:
                self.assertTrue(strong.contains(c.y, 1e-2), f'{name}: {c.y}')

    def test_mtame_sin(self):
        cloud = mtame_probe(examples.get('sin'), (0.0,))
        self.assertTrue(cloud.contains((0.0,), 1e-2))

    def test_empty_clouds(self):
        self.assertTrue(ps_probe(examples.get('linear2')).is_empty())
        self.assertTrue(weak_ps_probe(examples.get('linear2')).is_empty())
        self.assertTrue(mtame_probe(examples.get('linear2'), None, SMALL).is_empty())

    def test_kzero(self):
        cloud = k_zero_cloud(examples.get('quadratic'), (1.0,), [(-2.0, 2.0)])
        self.assertEqual(1, len(cloud))
        self.assertAlmostEqual(0.0, cloud.candidates[0].y[0], places=9)
        with self.assertRaises(InputError):
            k_zero_cloud(examples.get('quadratic'), (1.0,), [(-np.inf, 2.0)])

    def test_rabier_statistic(self):
        stat = RabierStatistic(examples.get('quadratic'))
        self.assertAlmostEqual(4.0, stat(np.array([2.0])), places=12)
        np.testing.assert_allclose([2.0], stat.gradient(np.array([2.0])), rtol=1e-6)


class CrosscheckTest(unittest.TestCase):

    def test_proper(self):
        r = theorem31_crosscheck(examples.get('quadratic'), (1.0,))
        self.assertTrue(r.consistent)
        self.assertTrue(all(r.conditions.values()))
        self.assertEqual((), r.diagnostics)

    def test_boundary_sublevel(self):
        r = theorem31_crosscheck(examples.get('ex41'), (-4.0, 2.0))
        self.assertTrue(r.consistent)
        self.assertTrue(r.conditions['proper'])

    def test_improper(self):
        r = theorem31_crosscheck(examples.get('sin'), (0.0,))
        self.assertTrue(r.consistent)
        self.assertFalse(any(r.conditions.values()))

    def test_hypothesis(self):
        with self.assertRaises(HypothesisError):
            theorem31_crosscheck(examples.get('linear2'), (0.0,))


if __name__ == '__main__':
    unittest.main()
