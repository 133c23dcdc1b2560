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

"""Numerical probes for the asymptotic behavior of f restricted to Omega.

The probes sample the sublevel set {x in Omega : f(x) <= ybar} on
concentric shells R_k <= ||x|| < R_{k+1} and look for sequences with
diverging ||x||:

* :func:`properness_probe`: bounded images along diverging sequences.
* :func:`bounded_section_probe`: images unbounded below.
* :func:`ps_probe`, :func:`weak_ps_probe`, :func:`mtame_probe`: limit values
  of f along diverging sequences with nu -> 0, ||x|| nu -> 0 or inside
  the Gamma set.
* :func:`k_zero_cloud`: critical values inside a finite search box.

Witnesses are sound: every stored record re-evaluates to the same values.
An empty cloud or a holding verdict is evidence only, meaning that no
counterexample was found up to the largest radius at the given thresholds.
"""

import concurrent.futures
import dataclasses
import enum
import logging
import math
import numpy as np
from . import config
from .calculus import gradient
from .errors import HypothesisError, InfeasiblePointError, InputError, PreconditionError
from .minnorm import RabierMode, rabier
from .problem import Box, FullSpace, SublevelBound, as_point


log = logging.getLogger(__name__)
FD_STEP = 1e-6
_SHELL_MARGIN = 1e-9
_BACKTRACK = 30
_BISECT_STEPS = 60


@dataclasses.dataclass(frozen=True)
class RadiusSchedule:
    """The shells R_k <= ||x|| < R_{k+1} used by the probes.

    :param radii: The strictly increasing positive radii R_0, ..., R_K
        which define K shells.
    :param samples_per_shell: The number of random samples per shell.
    """
    radii: tuple
    samples_per_shell: int = 256

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if len(radii) < 2:
            raise InputError('RadiusSchedule requires at least two radii')
        if any(not math.isfinite(r) or r <= 0 for r in radii):
            raise InputError('RadiusSchedule radii must be finite and positive')
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise InputError('RadiusSchedule radii must be strictly increasing')
        if int(self.samples_per_shell) < 1:
            raise InputError('samples_per_shell must be positive')
        object.__setattr__(self, 'radii', radii)
        object.__setattr__(self, 'samples_per_shell', int(self.samples_per_shell))

    @staticmethod
    def geometric(r0=1.0, rho=2.0, count=20, samples_per_shell=256):
        """Construct the schedule R_k = r0 * rho**k for k = 0, ..., count."""
        if not r0 > 0 or not rho > 1 or int(count) < 1:
            raise InputError(f'Invalid geometric schedule r0={r0}, rho={rho}, count={count}')
        return RadiusSchedule(tuple(r0 * rho ** k for k in range(int(count) + 1)), samples_per_shell)

    @property
    def shell_count(self):
        return len(self.radii) - 1

    def shells(self):
        return list(zip(self.radii[:-1], self.radii[1:]))

    def is_outer(self, index):
        """Check for a shell in the outer half of the schedule."""
        return index >= self.shell_count // 2

    def scaled(self, c):
        return RadiusSchedule(tuple(c * r for r in self.radii), self.samples_per_shell)

    def to_dict(self):
        return {'radii': list(self.radii), 'samples_per_shell': self.samples_per_shell}


DEFAULT_SCHEDULE = RadiusSchedule.geometric()


@dataclasses.dataclass(frozen=True)
class WitnessRecord:
    """One replayable sample: the point, its image and its statistics."""
    x: tuple
    f: tuple
    shell: int = None
    nu: float = None
    gamma: float = None

    @property
    def norm(self):
        return float(np.linalg.norm(self.x))

    def to_dict(self):
        return {
            'x': list(self.x),
            'norm': self.norm,
            'f': list(self.f),
            'nu': self.nu,
            'gamma': self.gamma,
            'shell': self.shell,
        }

    @staticmethod
    def from_dict(d):
        return WitnessRecord(tuple(d['x']), tuple(d['f']), d.get('shell'), d.get('nu'), d.get('gamma'))


class Status(enum.Enum):
    HOLDS = 'holds_evidence'
    FAILS = 'fails_with_witness'


@dataclasses.dataclass(frozen=True)
class Verdict:
    """The outcome of a probe.

    :var probe: The probe name.
    :var status: The :class:`Status`.
    :var witness: The tuple of :class:`WitnessRecord`, nonempty on failure.
    :var summary: The per-shell trend statistics.
    :var message: A short human-readable explanation.
    """
    probe: str
    status: Status
    witness: tuple = ()
    summary: tuple = ()
    message: str = ''

    def __post_init__(self):
        if self.status is Status.FAILS and not self.witness:
            raise InputError('A failing verdict requires a witness')

    @property
    def holds(self):
        return self.status is Status.HOLDS

    def to_dict(self):
        return {
            'probe': self.probe,
            'status': self.status.value,
            'message': self.message,
            'witness': [w.to_dict() for w in self.witness],
            'summary': list(self.summary),
        }


@dataclasses.dataclass(frozen=True)
class Candidate:
    """A cluster of accepted points with nearby images.

    :var y: The representative image.
    :var best_residual: The smallest acceptance statistic in the cluster.
    :var witness: The tuple of :class:`WitnessRecord` cluster members.
    """
    y: tuple
    best_residual: float
    witness: tuple

    def shells(self):
        return sorted(set(w.shell for w in self.witness if w.shell is not None))

    def to_dict(self):
        return {
            'y': list(self.y),
            'best_residual': self.best_residual,
            'shells': self.shells(),
            'witness': [w.to_dict() for w in self.witness],
        }


@dataclasses.dataclass(frozen=True)
class AsymptoticCloud:
    """The numerical stand-in for an asymptotic value set.

    :var kind: The probe name: ps, weak-ps, mtame or kzero.
    :var candidates: The tuple of :class:`Candidate`.
    :var divergent: The number of accepted points outside every candidate,
        usually from sequences with diverging images.
    :var accepted: The total number of accepted points.
    :var summary: The per-shell statistics.
    """
    kind: str
    candidates: tuple = ()
    divergent: int = 0
    accepted: int = 0
    summary: tuple = ()

    def __len__(self):
        return len(self.candidates)

    def is_empty(self):
        return not self.candidates

    def values(self):
        return np.array([c.y for c in self.candidates])

    def distance(self, y):
        """Get the distance from y to the nearest candidate or member image."""
        y = np.asarray(y, dtype=float)
        best = math.inf
        for c in self.candidates:
            best = min(best, float(np.linalg.norm(np.asarray(c.y) - y)))
            for w in c.witness:
                best = min(best, float(np.linalg.norm(np.asarray(w.f) - y)))
        return best

    def contains(self, y, radius):
        return self.distance(y) <= radius

    def to_dict(self):
        return {
            'kind': self.kind,
            'empty': self.is_empty(),
            'divergent': self.divergent,
            'accepted': self.accepted,
            'candidates': [c.to_dict() for c in self.candidates],
            'summary': list(self.summary),
        }


@dataclasses.dataclass(frozen=True, eq=False)
class ShellSamples:
    """The sublevel-feasible samples of one shell."""
    index: int
    lower: float
    upper: float
    x: np.ndarray
    f: np.ndarray

    def __len__(self):
        return len(self.x)


def as_sublevel(ybar, m):
    """Convert ybar to a :class:`SublevelBound` of dimension m.

    :param ybar: The bound, a sequence of floats, or None for all +inf.
    :param m: The number of objectives.
    """
    if ybar is None:
        return SublevelBound.unrestricted(m)
    if not isinstance(ybar, SublevelBound):
        ybar = SublevelBound(ybar)
    if ybar.m != m:
        raise InputError(f'ybar dimension {ybar.m} does not match m={m}')
    return ybar


def _thresholds(thresholds):
    return config.DEFAULT if thresholds is None else thresholds


def _map(fn, items, threads):
    threads = config.default_threads() if threads is None else int(threads)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, items))


def _project_rows(feasible, x):
    if isinstance(feasible, FullSpace):
        return x
    if isinstance(feasible, Box):
        return np.clip(x, feasible.lower, feasible.upper)
    return np.array([feasible.project(p) for p in x]).reshape(x.shape)


class _Region:
    """Omega intersected with a shell or a box, optionally with the sublevel set."""

    def __init__(self, problem, ybar, t, shell=None, box=None, sublevel=True):
        self.problem = problem
        self.ybar = ybar.array
        self.t = t
        self.shell = shell
        self.box = box
        self.sublevel = sublevel

    def contains(self, x):
        if not np.all(np.isfinite(x)):
            return False
        if self.shell is not None:
            r = np.linalg.norm(x)
            if not self.shell[0] <= r < self.shell[1]:
                return False
        if self.box is not None and not self.box.contains(x):
            return False
        if not self.problem.feasible.contains(x, self.t.act_tol):
            return False
        if self.sublevel:
            f = self.problem.evaluate(x)
            return bool(np.all(np.isfinite(f)) and np.all(f <= self.ybar + self.t.sublevel_tol))
        return True

    def clamp(self, x):
        x = self.problem.feasible.project(x)
        if self.box is not None:
            x = self.box.project(x)
        if self.shell is not None:
            r = np.linalg.norm(x)
            lo, hi = self.shell
            if r == 0:
                return x
            if r < lo:
                x = x * (lo / r)
            elif r >= hi * (1 - _SHELL_MARGIN):
                x = x * (hi * (1 - _SHELL_MARGIN) / r)
        return x


def polyak_descent(x, stat, grad, region, steps, stop=0.0):
    """Drive a nonnegative statistic toward zero with Polyak steps.

    Each step moves to x - (s / ||g||^2) g, halving the step until the
    point stays in the region and the statistic decreases.

    :param x: The starting point inside the region.
    :param stat: The callable statistic s(x).
    :param grad: The callable (sub)gradient g(x).
    :param region: The region with contains(x) and clamp(x).
    :param steps: The maximum number of steps.
    :param stop: Stop once the statistic is at most this value.
    :return: The tuple (x, s) of the final point and statistic.
    """
    s = stat(x)
    for _ in range(steps):
        if s <= stop:
            break
        g = grad(x)
        gg = float(g @ g)
        if not math.isfinite(gg) or gg == 0.0:
            break
        step = (s / gg) * g
        scale = 1.0
        for _ in range(_BACKTRACK):
            y = region.clamp(x - scale * step)
            if region.contains(y):
                sy = stat(y)
                if sy < s:
                    x, s = y, sy
                    break
            scale *= 0.5
        else:
            break
    return x, s


class _Excess:
    """phi(x) = max_i (f_i(x) - ybar_i) over the finite entries of ybar."""

    def __init__(self, problem, ybar, t):
        self.objectives = problem.objectives
        y = ybar.array
        self.index = np.flatnonzero(np.isfinite(y))
        self.ybar = y[self.index]
        self.problem = problem
        self.t = t

    def __bool__(self):
        return bool(len(self.index))

    def values(self, images):
        return np.max(images[:, self.index] - self.ybar, axis=1)

    def __call__(self, x):
        f = self.problem.evaluate(x)[self.index]
        return float(np.max(f - self.ybar))

    def gradient(self, x):
        f = self.problem.evaluate(x)[self.index]
        i = self.index[int(np.argmax(f - self.ybar))]
        return gradient(self.objectives[i], x, self.t.tie_tol)


class _ImageNorm:
    """||f(x)|| with its gradient."""

    def __init__(self, problem, t):
        self.problem = problem
        self.t = t

    def __call__(self, x):
        return float(np.linalg.norm(self.problem.evaluate(x)))

    def gradient(self, x):
        f = self.problem.evaluate(x)
        norm = np.linalg.norm(f)
        if norm == 0:
            return np.zeros(len(x))
        g = sum(fi * gradient(e, x, self.t.tie_tol) for fi, e in zip(f, self.problem.objectives))
        return g / norm


class RabierStatistic:
    """The Rabier function or Gamma residual as a descent statistic.

    The gradient uses the attaining multipliers: with
    G(y) = sum_i lambda_i s_i grad f_i(y) + mu y and d = z / ||z||, the
    directional difference (G(x + h d) - G(x - h d)) / 2h equals the
    gradient of ||z|| because the Jacobian of G is symmetric.  Coordinate
    finite differences of the statistic serve as fallback.
    """

    def __init__(self, problem, mode=RabierMode.FULL, thresholds=None, gamma=False):
        self.problem = problem
        self.mode = RabierMode.parse(mode)
        self.t = _thresholds(thresholds)
        self.gamma = bool(gamma)
        self._key = None
        self._result = None

    def result(self, x):
        x = np.asarray(x, dtype=float)
        key = x.tobytes()
        if key != self._key:
            self._result = rabier(self.problem, x, self.mode, self.t, gamma=self.gamma)
            self._key = key
        return self._result

    def __call__(self, x):
        return self.result(x).value

    def _g(self, y, r):
        g = r.mu * y
        for f, lam, s in zip(self.problem.objectives, r.lambdas, r.signs):
            if lam:
                g = g + (lam * s) * gradient(f, y, self.t.tie_tol)
        return g

    def gradient(self, x):
        r = self.result(x)
        z = r.result.point
        norm = np.linalg.norm(z)
        if norm == 0:
            return np.zeros(len(x))
        d = z / norm
        g = (self._g(x + FD_STEP * d, r) - self._g(x - FD_STEP * d, r)) / (2 * FD_STEP)
        if np.all(np.isfinite(g)) and np.any(g):
            return g
        return self._fd_gradient(x)

    def _fd_gradient(self, x):
        g = np.zeros(len(x))
        for j in range(len(x)):
            e = np.zeros(len(x))
            e[j] = FD_STEP
            try:
                g[j] = (self(x + e) - self(x - e)) / (2 * FD_STEP)
            except InfeasiblePointError:
                g[j] = 0.0
        self.result(x)
        return g


def _sublevel_rows(images, ybar, t):
    ok = np.all(np.isfinite(images), axis=1)
    with np.errstate(invalid='ignore'):
        ok &= np.all(images <= ybar.array + t.sublevel_tol, axis=1)
    return ok


def _arc(a, b, s):
    p = (1 - s) * a + s * b
    norm = np.linalg.norm(p)
    if norm == 0:
        return p
    return p * (((1 - s) * np.linalg.norm(a) + s * np.linalg.norm(b)) / norm)


def _bisect(a, b, region):
    """Find the sublevel boundary between a (inside) and b (outside) along the shell arc."""
    lo, hi = 0.0, 1.0
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if region.contains(_arc(a, b, mid)):
            lo = mid
        else:
            hi = mid
    p = _arc(a, b, lo)
    return p if region.contains(p) else None


def _sample_shell(problem, ybar, t, schedule, index, rng):
    lo, hi = schedule.radii[index], schedule.radii[index + 1]
    count = schedule.samples_per_shell
    n = problem.n
    d = rng.standard_normal((count, n))
    norms = np.linalg.norm(d, axis=1)
    norms[norms == 0] = 1.0
    radius = rng.uniform(lo, hi, size=count)
    x = _project_rows(problem.feasible, d * (radius / norms)[:, np.newaxis])
    images = problem.evaluate_array(x)
    r = np.linalg.norm(x, axis=1)
    omega = (r >= lo) & (r < hi) & problem.feasible.contains_array(x, t.act_tol)
    ok = omega & _sublevel_rows(images, ybar, t)
    extra = []
    excess = _Excess(problem, ybar, t)
    region = _Region(problem, ybar, t, shell=(lo, hi))
    if excess and not np.any(ok) and np.any(omega):
        restore = _Region(problem, ybar, t, shell=(lo, hi), sublevel=False)
        idx = np.flatnonzero(omega)
        phi = excess.values(images[idx])
        for i in idx[np.argsort(phi, kind='stable')[:t.descent_starts]]:
            y, _ = polyak_descent(x[i], excess, excess.gradient, restore, t.descent_steps)
            if region.contains(y):
                extra.append(y)
        log.debug('shell %d: restored %d sublevel points', index, len(extra))
    elif excess and np.any(ok) and np.any(omega & ~ok):
        inside = x[ok]
        outside = x[omega & ~ok]
        cap = max(1, count // 8)
        for a in inside:
            if len(extra) >= cap:
                break
            aligned = np.flatnonzero(outside @ a > 0)
            if not len(aligned):
                continue
            b = outside[aligned[np.argmin(np.linalg.norm(outside[aligned] - a, axis=1))]]
            p = _bisect(a, b, region)
            if p is not None:
                extra.append(p)
    x = np.vstack([x[ok]] + [np.asarray(extra).reshape((-1, n))])
    images = problem.evaluate_array(x)
    log.debug('shell %d [%g, %g): %d samples', index, lo, hi, len(x))
    return ShellSamples(index, lo, hi, x, images)


def shell_sampler(problem, ybar=None, schedule=None, seed=0, thresholds=None, threads=None):
    """Sample the sublevel set on each shell of a radius schedule.

    Points are drawn with uniform directions and radii, projected onto
    Omega and rejected outside the shell or the sublevel set.  Shells with
    no accepted point fall back to a local descent on
    max_i (f_i(x) - ybar_i) restricted to the shell.  Shells with both
    accepted and rejected points add sublevel-boundary points found by
    bisection along the shell arc.

    :param problem: The :class:`Problem`.
    :param ybar: The :class:`SublevelBound`, None for all +inf.
    :param schedule: The :class:`RadiusSchedule`, None for the default.
    :param seed: The integer random seed.
    :param thresholds: The :class:`Thresholds`, None for the defaults.
    :param threads: The worker count, None for the configured default.
    :return: The list of :class:`ShellSamples`, one per shell.  Empty
        shells are reported, not errors.
    """
    t = _thresholds(thresholds)
    ybar = as_sublevel(ybar, problem.m)
    schedule = DEFAULT_SCHEDULE if schedule is None else schedule
    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(schedule.shell_count)]
    return _map(lambda k: _sample_shell(problem, ybar, t, schedule, k, rngs[k]),
                list(range(schedule.shell_count)), threads)


def _record(problem, x, shell=None, nu=None, gamma=None):
    x = as_point(x)
    return WitnessRecord(tuple(x.tolist()), tuple(problem.evaluate(x).tolist()), shell, nu, gamma)


def _samples(problem, ybar, schedule, seed, t, threads, samples):
    if samples is not None:
        return samples
    return shell_sampler(problem, ybar, schedule, seed, t, threads)


def bounded_section_probe(problem, ybar, schedule=None, seed=0, thresholds=None, threads=None, samples=None):
    """Probe whether the section of f(Omega) at ybar is bounded.

    The section is bounded above by ybar, so the probe tracks the running
    minimum of each objective over the shells.

    :return: The :class:`Verdict`.  It fails when some running minimum
        falls below -divergence_threshold, with the sequence of samples
        that lowered it as witness.
    :raise PreconditionError: If ybar is not finite.
    """
    t = _thresholds(thresholds)
    ybar = as_sublevel(ybar, problem.m)
    if not ybar.is_finite():
        raise PreconditionError('bounded_section_probe requires a finite ybar')
    samples = _samples(problem, ybar, schedule, seed, t, threads, samples)
    running = np.full(problem.m, math.inf)
    trails = [[] for _ in range(problem.m)]
    summary = []
    for shell in samples:
        if len(shell):
            idx = np.argmin(shell.f, axis=0)
            for i in range(problem.m):
                value = shell.f[idx[i], i]
                if value < running[i]:
                    running[i] = value
                    trails[i].append(_record(problem, shell.x[idx[i]], shell.index))
        summary.append({'shell': shell.index, 'count': len(shell), 'running_min': running.tolist()})
    failing = [i for i in range(problem.m) if running[i] < -t.divergence_threshold]
    if failing:
        i = failing[0]
        msg = f'f_{i + 1} unbounded below on the section: {running[i]:g}'
        log.info('section probe fails: %s', msg)
        return Verdict('section', Status.FAILS, tuple(trails[i]), tuple(summary), msg)
    log.info('section probe holds')
    return Verdict('section', Status.HOLDS, (), tuple(summary), 'running minima stay bounded')


def properness_probe(problem, ybar=None, schedule=None, seed=0, thresholds=None, threads=None, samples=None):
    """Probe properness of f on Omega at the sublevel ybar.

    Each shell minimizes ||f|| over its samples, refined by local descent
    from the best samples.  Properness fails when at least
    min_support_shells shells, one of them in the outer half of the
    schedule, reach ||f|| <= bound_cap.

    :return: The :class:`Verdict` with the per-shell minimizers as witness.
    """
    t = _thresholds(thresholds)
    ybar = as_sublevel(ybar, problem.m)
    schedule = DEFAULT_SCHEDULE if schedule is None else schedule
    samples = _samples(problem, ybar, schedule, seed, t, threads, samples)
    cap = t.bound_cap if t.bound_cap is not None else 10.0 * (1.0 + ybar.finite_norm())

    def run(shell):
        if not len(shell):
            return None
        stat = _ImageNorm(problem, t)
        region = _Region(problem, ybar, t, shell=(shell.lower, shell.upper))
        norms = np.linalg.norm(shell.f, axis=1)
        order = np.argsort(norms, kind='stable')
        best_x, best = shell.x[order[0]], float(norms[order[0]])
        for i in order[:t.descent_starts]:
            y, s = polyak_descent(shell.x[i], stat, stat.gradient, region, t.descent_steps)
            if s < best:
                best_x, best = y, s
        return best_x, best

    results = _map(run, samples, threads)
    summary = []
    bounded = []
    for shell, r in zip(samples, results):
        entry = {'shell': shell.index, 'count': len(shell), 'min_norm_f': None if r is None else r[1]}
        summary.append(entry)
        if r is not None and r[1] <= cap:
            bounded.append(_record(problem, r[0], shell.index))
    shells = [w.shell for w in bounded]
    if len(shells) >= t.min_support_shells and any(schedule.is_outer(k) for k in shells):
        msg = f'||f|| <= {cap:g} on {len(shells)} shells'
        log.info('properness probe fails: %s', msg)
        return Verdict('proper', Status.FAILS, tuple(bounded), tuple(summary), msg)
    log.info('properness probe holds')
    return Verdict('proper', Status.HOLDS, (), tuple(summary), f'||f|| exceeds {cap:g} on outer shells')


def _leader_cluster(items, radius):
    """Group (y, shell, stat, record) items, outermost shell and smallest statistic first."""
    items = sorted(items, key=lambda item: (-(item[1] if item[1] is not None else -1), item[2]))
    leaders = []
    groups = []
    for item in items:
        if leaders:
            d = np.linalg.norm(np.array(leaders) - item[0], axis=1)
            j = int(np.argmin(d))
            if d[j] <= radius:
                groups[j].append(item)
                continue
        leaders.append(item[0])
        groups.append([item])
    return groups


def _make_cloud(kind, items, t, schedule=None, summary=()):
    candidates = []
    divergent = 0
    for group in _leader_cluster(items, t.cluster_radius):
        shells = set(item[1] for item in group)
        if schedule is not None:
            supported = len(shells) >= t.min_support_shells and any(schedule.is_outer(k) for k in shells)
            if not supported:
                divergent += len(group)
                continue
        candidates.append(Candidate(tuple(group[0][0].tolist()), float(min(item[2] for item in group)),
                                    tuple(item[3] for item in group)))
    return AsymptoticCloud(kind, tuple(candidates), divergent, len(items), tuple(summary))


def _cloud_probe(kind, problem, ybar, schedule, mode, seed, t, threads, samples):
    ybar = as_sublevel(ybar, problem.m)
    schedule = DEFAULT_SCHEDULE if schedule is None else schedule
    mode = RabierMode.parse(mode)
    samples = _samples(problem, ybar, schedule, seed, t, threads, samples)
    gamma = kind == 'mtame'

    def accept_stat(x, value):
        return float(np.linalg.norm(x)) * value if kind == 'weak-ps' else value

    def run(shell):
        if kind == 'mtame':
            tau = t.gamma_tol
        else:
            tau = t.tau_abs / shell.lower ** t.ps_exponent
        stop = 0.1 * tau / shell.upper if kind == 'weak-ps' else 0.1 * tau
        stat = RabierStatistic(problem, mode, t, gamma=gamma)
        region = _Region(problem, ybar, t, shell=(shell.lower, shell.upper))
        values = np.array([stat(x) for x in shell.x])
        scores = np.array([accept_stat(x, v) for x, v in zip(shell.x, values)])
        accepted = [(x, v, s) for x, v, s in zip(shell.x, values, scores) if s <= tau]
        for i in np.argsort(scores, kind='stable')[:t.descent_starts]:
            if scores[i] <= tau:
                continue
            y, v = polyak_descent(shell.x[i], stat, stat.gradient, region, t.descent_steps, stop)
            s = accept_stat(y, v)
            if s <= tau:
                accepted.append((y, v, s))
        entry = {'shell': shell.index, 'count': len(shell), 'accepted': len(accepted),
                 'min_stat': float(np.min(scores)) if len(scores) else None}
        log.debug('%s shell %d: %d accepted', kind, shell.index, len(accepted))
        return accepted, entry

    items = []
    summary = []
    for shell, (accepted, entry) in zip(samples, _map(run, samples, threads)):
        summary.append(entry)
        for x, v, s in accepted:
            rec = _record(problem, x, shell.index, nu=None if gamma else v, gamma=v if gamma else None)
            items.append((np.array(rec.f), shell.index, s, rec))
    cloud = _make_cloud(kind, items, t, schedule, summary)
    log.info('%s probe: %d candidates, %d divergent', kind, len(cloud.candidates), cloud.divergent)
    return cloud


def ps_probe(problem, ybar=None, schedule=None, mode=RabierMode.FULL, seed=0,
             thresholds=None, threads=None, samples=None):
    """Probe the limit values of f along diverging sequences with nu -> 0.

    Points with nu(x) <= tau_abs / R_k**ps_exponent are accepted, after a
    descent on nu from the best samples of each shell.

    :param problem: The :class:`Problem`.
    :param ybar: The :class:`SublevelBound`, None for all +inf.
    :param schedule: The :class:`RadiusSchedule`.
    :param mode: The :class:`RabierMode`.
    :param seed: The integer random seed.
    :param thresholds: The :class:`Thresholds`.
    :param threads: The worker count.
    :param samples: Precomputed :func:`shell_sampler` output to reuse.
    :return: The :class:`AsymptoticCloud`.
    """
    return _cloud_probe('ps', problem, ybar, schedule, mode, seed, _thresholds(thresholds), threads, samples)


def weak_ps_probe(problem, ybar=None, schedule=None, mode=RabierMode.FULL, seed=0,
                  thresholds=None, threads=None, samples=None):
    """Probe the limit values of f along diverging sequences with ||x|| nu -> 0.

    Same pipeline as :func:`ps_probe` with the statistic ||x|| nu(x) <= tau_abs.
    """
    return _cloud_probe('weak-ps', problem, ybar, schedule, mode, seed, _thresholds(thresholds), threads, samples)


def mtame_probe(problem, ybar=None, schedule=None, mode=RabierMode.FULL, seed=0,
                thresholds=None, threads=None, samples=None):
    """Probe the limit values of f along diverging sequences inside Gamma(f, Omega).

    Same pipeline as :func:`ps_probe` with the statistic
    gamma_residual(x) <= gamma_tol.
    """
    return _cloud_probe('mtame', problem, ybar, schedule, mode, seed, _thresholds(thresholds), threads, samples)


def as_box(search_box, n):
    """Convert a search box to a finite :class:`Box` of dimension n."""
    if not isinstance(search_box, Box):
        pairs = np.asarray(search_box, dtype=float).reshape((-1, 2))
        search_box = Box(tuple(pairs[:, 0]), tuple(pairs[:, 1]))
    if search_box.dim != n:
        raise InputError(f'Search box dimension {search_box.dim} does not match n={n}')
    if not all(math.isfinite(v) for v in search_box.lower + search_box.upper):
        raise InputError('Search box must be finite')
    return search_box


def grid_points(box, grid):
    """Get the tensor grid over a box.

    :param box: The finite :class:`Box`.
    :param grid: The per-dimension point count as an int or a sequence.
    :return: The (N, n) array of grid points.
    """
    n = box.dim
    counts = [int(grid)] * n if np.isscalar(grid) else [int(c) for c in grid]
    if len(counts) != n or any(c < 1 for c in counts):
        raise InputError(f'Invalid grid {grid} for dimension {n}')
    axes = [np.linspace(lo, hi, c) if c > 1 else np.array([0.5 * (lo + hi)])
            for lo, hi, c in zip(box.lower, box.upper, counts)]
    mesh = np.meshgrid(*axes, indexing='ij')
    return np.stack([m.ravel() for m in mesh], axis=1)


def k_zero_cloud(problem, ybar, search_box, grid=11, mode=RabierMode.FULL, thresholds=None, threads=None):
    """Find the critical values f(x) with nu(x) = 0 inside a search box.

    Grid seeds are projected onto Omega, moved into the sublevel set by a
    descent on max_i (f_i - ybar_i) when needed, then descend on nu.
    Points with nu <= crit_tol are clustered by image.

    :param problem: The :class:`Problem`.
    :param ybar: The :class:`SublevelBound`, None for all +inf.
    :param search_box: The finite :class:`Box` or sequence of (lo, hi) pairs.
    :param grid: The per-dimension seed count.
    :param mode: The :class:`RabierMode`.
    :param thresholds: The :class:`Thresholds`.
    :param threads: The worker count.
    :return: The :class:`AsymptoticCloud` of kind kzero.
    """
    t = _thresholds(thresholds)
    ybar = as_sublevel(ybar, problem.m)
    box = as_box(search_box, problem.n)
    mode = RabierMode.parse(mode)
    seeds = grid_points(box, grid)
    excess = _Excess(problem, ybar, t)

    def run(seed_point):
        region = _Region(problem, ybar, t, box=box)
        x = box.project(problem.feasible.project(seed_point))
        if not region.contains(x):
            if not excess:
                return None
            restore = _Region(problem, ybar, t, box=box, sublevel=False)
            if not restore.contains(x):
                return None
            x, _ = polyak_descent(x, excess, excess.gradient, restore, t.descent_steps)
            if not region.contains(x):
                return None
        stat = RabierStatistic(problem, mode, t)
        x, v = polyak_descent(x, stat, stat.gradient, region, t.descent_steps, 0.1 * t.crit_tol)
        return (x, v) if v <= t.crit_tol else None

    items = []
    for r in _map(run, list(seeds), threads):
        if r is not None:
            rec = _record(problem, r[0], nu=r[1])
            items.append((np.array(rec.f), None, r[1], rec))
    summary = ({'seeds': len(seeds), 'accepted': len(items)},)
    cloud = _make_cloud('kzero', items, t, None, summary)
    log.info('kzero: %d candidates from %d seeds', len(cloud.candidates), len(seeds))
    return cloud


@dataclasses.dataclass(frozen=True)
class CrosscheckReport:
    """The four equivalent conditions evaluated at one sublevel.

    :var section: The bounded-section :class:`Verdict` (the hypothesis).
    :var proper: The properness :class:`Verdict`.
    :var ps: The nu -> 0 :class:`AsymptoticCloud`.
    :var weak_ps: The ||x|| nu -> 0 :class:`AsymptoticCloud`.
    :var mtame: The Gamma-set :class:`AsymptoticCloud`.
    """
    section: Verdict
    proper: Verdict
    ps: AsymptoticCloud
    weak_ps: AsymptoticCloud
    mtame: AsymptoticCloud

    @property
    def conditions(self):
        return {
            'proper': self.proper.holds,
            'ps_empty': self.ps.is_empty(),
            'weak_ps_empty': self.weak_ps.is_empty(),
            'mtame_empty': self.mtame.is_empty(),
        }

    @property
    def consistent(self):
        return len(set(self.conditions.values())) == 1

    @property
    def diagnostics(self):
        c = self.conditions
        if self.consistent:
            return ()
        majority = sum(c.values()) * 2 >= len(c)
        return tuple(f'{name} disagrees: tolerance artifact or sampler gap'
                     for name, value in c.items() if value != majority)

    def to_dict(self):
        return {
            'conditions': self.conditions,
            'consistent': self.consistent,
            'diagnostics': list(self.diagnostics),
            'section': self.section.to_dict(),
            'proper': self.proper.to_dict(),
            'ps': self.ps.to_dict(),
            'weak_ps': self.weak_ps.to_dict(),
            'mtame': self.mtame.to_dict(),
        }


def theorem31_crosscheck(problem, ybar, schedule=None, mode=RabierMode.FULL, seed=0,
                         thresholds=None, threads=None):
    """Evaluate properness and the three asymptotic conditions together.

    When the section at ybar is bounded, f is proper at ybar exactly when
    each of the three asymptotic clouds is empty.  Disagreements are
    reported as diagnostics, never reconciled.

    :return: The :class:`CrosscheckReport`.
    :raise HypothesisError: If the bounded-section probe fails.
    """
    t = _thresholds(thresholds)
    ybar = as_sublevel(ybar, problem.m)
    schedule = DEFAULT_SCHEDULE if schedule is None else schedule
    samples = shell_sampler(problem, ybar, schedule, seed, t, threads)
    section = bounded_section_probe(problem, ybar, schedule, seed, t, threads, samples)
    if not section.holds:
        raise HypothesisError(f'bounded-section hypothesis failed: {section.message}', section)
    args = (problem, ybar, schedule, mode, seed, t, threads, samples)
    report = CrosscheckReport(
        section,
        properness_probe(problem, ybar, schedule, seed, t, threads, samples),
        ps_probe(*args),
        weak_ps_probe(*args),
        mtame_probe(*args),
    )
    if report.consistent:
        log.info('crosscheck consistent: %s', report.conditions)
    else:
        log.warning('crosscheck inconsistent: %s', report.conditions)
    return report
