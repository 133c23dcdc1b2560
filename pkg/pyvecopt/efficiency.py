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

"""Pareto and Geoffrion efficiency.

Sample-based checks refute efficiency with explicit witnesses and report
consistency otherwise.  Pareto points come from weighted-sum scalarization
over the sublevel set, and the recession-cone condition on f(Omega) is
estimated from normalized images along diverging samples.
"""

import dataclasses
import itertools
import logging
import math
import numpy as np
from . import config
from .asymptotics import (DEFAULT_SCHEDULE, RadiusSchedule, Status, Verdict, WitnessRecord,
                          _leader_cluster, _map, as_box, as_sublevel, bounded_section_probe,
                          k_zero_cloud, mtame_probe, polyak_descent, properness_probe, ps_probe,
                          shell_sampler, theorem31_crosscheck, weak_ps_probe)
from .calculus import gradient
from .errors import (InfeasibleProblemError, InfeasiblePointError, InputError, NumericalError,
                     ParetoViolationError, PreconditionError, SearchFailureError)
from .minnorm import RabierMode
from .oracle import GridSpec, feasible_grid
from .problem import SmoothIneq, SublevelBound, as_point


log = logging.getLogger(__name__)
VERIFY_TOL = 1e-9
ORACLE_POINTS = 10001
_ARMIJO = 1e-4


def dominates(y1, y2):
    """Check y1 <= y2 componentwise with y1 != y2.

    :raise InputError: On dimension mismatch.
    """
    y1 = np.atleast_1d(np.asarray(y1, dtype=float))
    y2 = np.atleast_1d(np.asarray(y2, dtype=float))
    if y1.shape != y2.shape:
        raise InputError(f'dimension mismatch: {y1.shape} vs {y2.shape}')
    return bool(np.all(y1 <= y2) and np.any(y1 != y2))


def _record(problem, x):
    return WitnessRecord(tuple(x.tolist()), tuple(problem.evaluate(x).tolist()))


def _feasible_samples(problem, samples, tol):
    x = np.asarray(samples, dtype=float).reshape((-1, problem.n))
    x = x[problem.feasible.contains_array(x, tol)]
    images = problem.evaluate_array(x)
    keep = np.all(np.isfinite(images), axis=1)
    return x[keep], images[keep]


def _check_point(problem, xbar, tol):
    xbar = as_point(xbar, problem.n)
    if not problem.feasible.contains(xbar, tol):
        raise InfeasiblePointError(f'Point {xbar.tolist()} is not feasible')
    return xbar


def pareto_verify(problem, xbar, samples, tol=VERIFY_TOL):
    """Check xbar against dominating samples.

    :param problem: The :class:`Problem`.
    :param xbar: The feasible candidate point.
    :param samples: The (N, n) oracle samples, infeasible rows are ignored.
    :param tol: The strict dominance margin.
    :return: The :class:`Verdict`, failing with the first sample x with
        f(x) <= f(xbar) + tol and f_i(x) < f_i(xbar) - tol for some i.
    """
    xbar = _check_point(problem, xbar, tol)
    x, images = _feasible_samples(problem, samples, tol)
    fbar = problem.evaluate(xbar)
    mask = np.all(images <= fbar + tol, axis=1) & np.any(images < fbar - tol, axis=1)
    summary = ({'samples': len(x)},)
    if np.any(mask):
        k = int(np.argmax(mask))
        return Verdict('pareto', Status.FAILS, (_record(problem, x[k]),), summary,
                       f'sample {x[k].tolist()} dominates')
    return Verdict('pareto', Status.HOLDS, (), summary, f'undominated by {len(x)} samples')


@dataclasses.dataclass(frozen=True)
class GeoffrionReport:
    """The outcome of a Geoffrion trade-off check.

    :var M: The tested trade-off bound.
    :var consistent: True when no sample violates the bound.
    :var x: The violating sample.
    :var index: The 0-based improving objective i.
    :var min_ratio: The smallest trade-off ratio of the violation, inf
        when no objective worsens.
    :var level: The largest trade-off ratio over all samples.
    """
    M: float
    consistent: bool
    x: tuple = None
    index: int = None
    min_ratio: float = None
    level: float = None

    def to_dict(self):
        return {
            'status': 'consistent_up_to' if self.consistent else 'violation',
            'M': self.M,
            'x': None if self.x is None else list(self.x),
            'i': self.index,
            'min_ratio': self.min_ratio,
            'level': self.level,
        }


def _ratios(problem, xbar, samples, tol):
    x, images = _feasible_samples(problem, samples, tol)
    fbar = problem.evaluate(xbar)
    gains = fbar - images
    losses = np.max(images - fbar, axis=1) if len(x) else np.empty(0)
    with np.errstate(divide='ignore', invalid='ignore'):
        r = np.where(losses[:, np.newaxis] > tol, gains / losses[:, np.newaxis], np.inf)
    r = np.where(gains > tol, r, -np.inf)
    return x, r


def geoffrion_level(problem, xbar, samples, tol=VERIFY_TOL):
    """Get the smallest M consistent with the samples.

    :return: The supremum of the trade-off ratios, 0 when no sample
        improves any objective.
    """
    xbar = _check_point(problem, xbar, tol)
    _, r = _ratios(problem, xbar, samples, tol)
    return float(max(0.0, np.max(r))) if r.size else 0.0


def geoffrion_check(problem, xbar, M, samples, tol=VERIFY_TOL):
    """Check the Geoffrion trade-off bound M at xbar.

    For each sample x and objective i with f_i(x) < f_i(xbar) - tol, the
    ratio (f_i(xbar) - f_i(x)) / (f_j(x) - f_j(xbar)) is minimized over the
    worsening objectives j.

    :param problem: The :class:`Problem`.
    :param xbar: The feasible candidate point.
    :param M: The positive trade-off bound.
    :param samples: The (N, n) oracle samples.
    :param tol: The comparison margin.
    :return: The :class:`GeoffrionReport` with the first violation in
        sample order, or consistent up to M.
    :raise ParetoViolationError: If a sample dominates xbar.
    """
    if not M > 0:
        raise InputError('M must be positive')
    verdict = pareto_verify(problem, xbar, samples, tol)
    if not verdict.holds:
        raise ParetoViolationError(f'xbar is dominated: {verdict.message}', verdict.witness[0].x)
    xbar = as_point(xbar, problem.n)
    x, r = _ratios(problem, xbar, samples, tol)
    level = float(max(0.0, np.max(r))) if r.size else 0.0
    violation = r > M
    if np.any(violation):
        k = int(np.argmax(np.any(violation, axis=1)))
        i = int(np.argmax(violation[k]))
        log.info('geoffrion violation at %s, i=%d, ratio=%g', x[k].tolist(), i, r[k, i])
        return GeoffrionReport(float(M), False, tuple(x[k].tolist()), i, float(r[k, i]), level)
    return GeoffrionReport(float(M), True, level=level)


@dataclasses.dataclass(frozen=True)
class ScalarizationConfig:
    """The weighted-sum scalarization settings.

    :param weights: The strictly positive weights lambda.
    :param ybar: The :class:`SublevelBound`, None for all +inf.
    :param box: The finite search box as a :class:`Box` or (lo, hi) pairs.
    :param starts: The number of multi-start points.
    :param steps: The projected-gradient step limit per penalty round.
    :param penalty_rounds: The number of penalty weight doublings.
    :param penalty: The initial penalty weight.
    :param seed: The random seed for the start points.
    :param grid_step: The oracle grid spacing, None for a grid with about
        10001 points per dimension in one dimension and fewer above.
    """
    weights: tuple
    ybar: object = None
    box: object = None
    starts: int = 64
    steps: int = 200
    penalty_rounds: int = 8
    penalty: float = 10.0
    seed: int = 0
    grid_step: float = None

    def __post_init__(self):
        weights = tuple(float(w) for w in np.atleast_1d(self.weights))
        if not weights or any(not (w > 0 and math.isfinite(w)) for w in weights):
            raise InputError(f'weights must be strictly positive: {weights}')
        if self.box is None:
            raise InputError('ScalarizationConfig requires a finite search box')
        if int(self.starts) < 1 or int(self.steps) < 1:
            raise InputError('starts and steps must be positive')
        object.__setattr__(self, 'weights', weights)


def oracle_grid(box, grid_step=None):
    """Get the verification grid over a search box."""
    if grid_step is not None:
        return GridSpec.from_step(box, grid_step)
    n = box.dim
    count = ORACLE_POINTS if n == 1 else max(2, min(1001, int(round(ORACLE_POINTS ** (1.0 / n)))))
    return GridSpec(box.lower, box.upper, (count,) * n)


class _Penalized:
    """<lambda, f(x)> plus a quadratic penalty on the sublevel and smooth constraints."""

    def __init__(self, problem, weights, ybar, t):
        self.problem = problem
        self.weights = np.asarray(weights)
        y = ybar.array
        self.index = np.flatnonzero(np.isfinite(y))
        self.ybar = y[self.index]
        feasible = problem.feasible
        self.constraints = feasible.constraints if isinstance(feasible, SmoothIneq) else ()
        self.t = t
        self.rho = 0.0

    def violations(self, x, f=None):
        f = self.problem.evaluate(x) if f is None else f
        v = list(f[self.index] - self.ybar)
        v.extend(g.evaluate(x) for g in self.constraints)
        return np.array(v)

    def objective(self, x):
        f = self.problem.evaluate(x)
        value = float(self.weights @ f)
        if self.rho:
            v = np.maximum(self.violations(x, f), 0.0)
            value += self.rho * float(v @ v)
        return value

    def gradient(self, x):
        grads = [gradient(e, x, self.t.tie_tol) for e in self.problem.objectives]
        g = sum(w * gi for w, gi in zip(self.weights, grads))
        if self.rho:
            v = self.violations(x)
            exprs = [self.problem.objectives[i] for i in self.index] + list(self.constraints)
            for vi, e in zip(v, exprs):
                if vi > 0:
                    g = g + (2 * self.rho * vi) * gradient(e, x, self.t.tie_tol)
        return g

    def excess(self, x):
        v = self.violations(x)
        return float(np.max(v)) if len(v) else -math.inf

    def restoration(self, x):
        return max(self.excess(x), 0.0)

    def excess_gradient(self, x):
        v = self.violations(x)
        exprs = [self.problem.objectives[i] for i in self.index] + list(self.constraints)
        return gradient(exprs[int(np.argmax(v))], x, self.t.tie_tol)


class _BoxRegion:
    """Omega-projected search box without the sublevel or smooth constraints."""

    def __init__(self, problem, box):
        self.problem = problem
        self.box = box

    def clamp(self, x):
        return self.box.project(self.problem.feasible.project(x))

    def contains(self, x):
        return bool(np.all(np.isfinite(x)) and self.box.contains(x))


def _projected_gradient(x, fn, region, steps):
    value = fn.objective(x)
    alpha = 1.0
    for _ in range(steps):
        g = fn.gradient(x)
        if not np.all(np.isfinite(g)):
            break
        while alpha > 1e-20:
            y = region.clamp(x - alpha * g)
            fy = fn.objective(y)
            if math.isfinite(fy) and fy <= value - _ARMIJO * float(g @ (x - y)):
                break
            alpha *= 0.5
        else:
            break
        moved = np.linalg.norm(y - x)
        x, value = y, fy
        alpha = min(1.0, 2.0 * alpha)
        if moved <= 1e-13 * (1.0 + np.linalg.norm(x)):
            break
    return x


def _solve_start(problem, cfg, ybar, box, t, x0):
    fn = _Penalized(problem, cfg.weights, ybar, t)
    region = _BoxRegion(problem, box)
    x = region.clamp(x0)
    for k in range(cfg.penalty_rounds):
        fn.rho = cfg.penalty * 2.0 ** k
        x = _projected_gradient(x, fn, region, cfg.steps)
        if not np.all(np.isfinite(x)):
            return None
        if not len(fn.index) and not fn.constraints:
            break
    if fn.excess(x) > 0:
        x, _ = polyak_descent(x, fn.restoration, fn.excess_gradient, region, cfg.steps)
    return x


@dataclasses.dataclass(frozen=True)
class ScalarizationResult:
    """The scalarization solution with its Pareto verification.

    :var weights: The weights lambda.
    :var x: The best local solution.
    :var f: The image f(x).
    :var value: The scalarized value <lambda, f(x)>.
    :var verdict: The :class:`Verdict` of :func:`pareto_verify`.
    """
    weights: tuple
    x: tuple
    f: tuple
    value: float
    verdict: Verdict

    def to_dict(self):
        return {
            'weights': list(self.weights),
            'x': list(self.x),
            'f': list(self.f),
            'value': self.value,
            'pareto': self.verdict.to_dict(),
        }


def scalarize_solve(problem, cfg, thresholds=None, threads=None):
    """Minimize <lambda, f(x)> over the sublevel set inside a search box.

    Multi-start projected gradient with Armijo backtracking keeps the
    iterates in Omega and the box.  Sublevel and smooth constraints enter
    as a quadratic penalty whose weight doubles each round, followed by a
    descent onto the constraint boundary when the final point still
    violates them.

    :param problem: The :class:`Problem`.
    :param cfg: The :class:`ScalarizationConfig`.
    :param thresholds: The :class:`Thresholds`.
    :param threads: The worker count.
    :return: The :class:`ScalarizationResult`.
    :raise InfeasibleProblemError: If no start reaches the sublevel set.
    :raise SearchFailureError: If every start diverges.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    if len(cfg.weights) != problem.m:
        raise InputError(f'expected {problem.m} weights, got {len(cfg.weights)}')
    ybar = as_sublevel(cfg.ybar, problem.m)
    box = as_box(cfg.box, problem.n)
    rng = np.random.default_rng(cfg.seed)
    lo, hi = np.array(box.lower), np.array(box.upper)
    starts = lo + (hi - lo) * rng.random((cfg.starts, problem.n))
    results = _map(lambda x0: _solve_start(problem, cfg, ybar, box, t, x0), list(starts), threads)
    finite = [x for x in results if x is not None and np.all(np.isfinite(problem.evaluate(x)))]
    if not finite:
        raise SearchFailureError('every scalarization start diverged')
    weights = np.asarray(cfg.weights)
    feasible = [x for x in finite if problem.sublevel_member(ybar, x, t.sublevel_tol)]
    if not feasible:
        raise InfeasibleProblemError('no sublevel-feasible point found inside the search box')
    values = [float(weights @ problem.evaluate(x)) for x in feasible]
    best = feasible[int(np.argmin(values))]
    x_grid, images = feasible_grid(problem, oracle_grid(box, cfg.grid_step), t.act_tol)
    fy = ybar.array + t.sublevel_tol
    samples = x_grid[np.all(images <= fy, axis=1)]
    verdict = pareto_verify(problem, best, samples)
    f = problem.evaluate(best)
    log.info('scalarize %s: x=%s, f=%s, %s', cfg.weights, best.tolist(), f.tolist(), verdict.status.value)
    return ScalarizationResult(cfg.weights, tuple(best.tolist()), tuple(f.tolist()), float(weights @ f), verdict)


def weight_grid(m, count):
    """Get the strictly positive weights k / count on the unit simplex.

    :param m: The number of objectives.
    :param count: The denominator, at least m.
    :return: The list of weight tuples in lexicographic order.
    """
    if m < 1 or count < m:
        raise InputError(f'weight grid requires count >= m >= 1, got m={m}, count={count}')
    weights = []
    for cuts in itertools.combinations(range(1, count), m - 1):
        parts = np.diff((0,) + cuts + (count,))
        weights.append(tuple(float(p) / count for p in parts))
    return weights


@dataclasses.dataclass(frozen=True)
class FrontResult:
    """The verified Pareto points of a weight sweep.

    :var points: The tuple of :class:`ScalarizationResult`.
    :var failures: The tuple of (weights, message) for failed weights.
    """
    points: tuple
    failures: tuple = ()

    def to_dict(self):
        return {
            'points': [p.to_dict() for p in self.points],
            'failures': [{'weights': list(w), 'error': msg} for w, msg in self.failures],
        }


def pareto_front(problem, ybar, weights_grid, cfg, thresholds=None, threads=None):
    """Sweep scalarization over a list of weights.

    :param problem: The :class:`Problem`.
    :param ybar: The :class:`SublevelBound`, None for all +inf.
    :param weights_grid: The strictly positive weight vectors.
    :param cfg: The :class:`ScalarizationConfig` template.
    :param thresholds: The :class:`Thresholds`.
    :param threads: The worker count.
    :return: The :class:`FrontResult` keeping verified points, deduplicated
        by image within cluster_radius.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    points = []
    failures = []
    for weights in weights_grid:
        c = dataclasses.replace(cfg, weights=tuple(weights), ybar=ybar)
        try:
            r = scalarize_solve(problem, c, t, threads)
        except (InfeasibleProblemError, NumericalError, PreconditionError) as ex:
            failures.append((c.weights, str(ex)))
            continue
        if not r.verdict.holds:
            failures.append((c.weights, r.verdict.message))
            continue
        if any(np.linalg.norm(np.subtract(p.f, r.f)) <= t.cluster_radius for p in points):
            continue
        points.append(r)
    return FrontResult(tuple(points), tuple(failures))


@dataclasses.dataclass(frozen=True)
class RecessionReport:
    """Estimated recession directions of f(Omega).

    :var directions: The unit directions, one per supported cluster.
    :var eq8_holds: False when some direction lies in -R^m_+.
    :var witness: The unit direction <= 0 refuting the condition.
    :var summary: The per-shell statistics.
    """
    directions: tuple
    eq8_holds: bool
    witness: tuple = None
    summary: tuple = ()

    def to_dict(self):
        return {
            'directions': [list(d) for d in self.directions],
            'eq8_holds': self.eq8_holds,
            'witness': None if self.witness is None else list(self.witness),
            'summary': list(self.summary),
        }


def recession_probe(problem, schedule=None, seed=0, thresholds=None, threads=None):
    """Estimate the recession cone of f(Omega) and check it against -R^m_+.

    Feasible samples with ||f(x)|| >= norm_floor give directions
    f(x) / ||f(x)||, clustered across shells.  A direction d with
    d <= direction_tol componentwise refutes the condition, and
    normalize(min(d, 0)) is its witness.

    :return: The :class:`RecessionReport`.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    schedule = DEFAULT_SCHEDULE if schedule is None else schedule
    samples = shell_sampler(problem, None, schedule, seed, t, threads)
    items = []
    summary = []
    for shell in samples:
        norms = np.linalg.norm(shell.f, axis=1)
        keep = np.flatnonzero(norms >= t.norm_floor)
        summary.append({'shell': shell.index, 'count': len(shell), 'directions': len(keep)})
        for i in keep:
            d = shell.f[i] / norms[i]
            items.append((d, shell.index, -float(norms[i]), None))
    directions = []
    for group in _leader_cluster(items, t.cluster_radius):
        shells = set(item[1] for item in group)
        if len(shells) >= t.min_support_shells and any(schedule.is_outer(k) for k in shells):
            directions.append(group[0][0])
    witness = None
    for d in directions:
        if np.all(d <= t.direction_tol):
            w = np.minimum(d, 0.0)
            witness = tuple((w / np.linalg.norm(w)).tolist())
            break
    log.info('recession: %d directions, eq8 %s', len(directions), 'fails' if witness else 'holds')
    return RecessionReport(tuple(tuple(d.tolist()) for d in directions), witness is None, witness, tuple(summary))


def sublevel_grid(problem, schedule=None, seed=0, thresholds=None, threads=None, quantiles=(0.25, 0.5, 0.75)):
    """Get sublevel vectors from componentwise quantiles of inner-shell images."""
    schedule = DEFAULT_SCHEDULE if schedule is None else schedule
    inner = RadiusSchedule(schedule.radii[:4], schedule.samples_per_shell)
    samples = shell_sampler(problem, None, inner, seed, thresholds, threads)
    images = np.vstack([s.f for s in samples] + [np.empty((0, problem.m))])
    images = images[np.all(np.isfinite(images), axis=1)]
    if not len(images):
        return []
    return [SublevelBound(tuple(np.quantile(images, q, axis=0).tolist())) for q in quantiles]


@dataclasses.dataclass(frozen=True)
class GeoffrionExistenceReport:
    """Evidence on the existence of Geoffrion-properly efficient solutions.

    :var status: sufficient, refuted or inconclusive.
    :var recession: The :class:`RecessionReport`.
    :var levels: The tuple of per-ybar dicts with section and properness
        verdicts and optional cross-check conditions.
    :var scalarized: The scalarized solution with its Geoffrion level, or None.
    """
    status: str
    recession: RecessionReport
    levels: tuple
    scalarized: dict = None

    def to_dict(self):
        return {
            'status': self.status,
            'recession': self.recession.to_dict(),
            'levels': list(self.levels),
            'scalarized': self.scalarized,
        }


def geoffrion_existence_report(problem, schedule=None, mode=RabierMode.FULL, seed=0, thresholds=None,
                               threads=None, box=None, weights=None, M=1e3, crosscheck=False):
    """Combine the necessary recession condition with global properness.

    :param problem: The :class:`Problem`.
    :param schedule: The :class:`RadiusSchedule`.
    :param mode: The :class:`RabierMode`.
    :param seed: The random seed.
    :param thresholds: The :class:`Thresholds`.
    :param threads: The worker count.
    :param box: The optional search box for a scalarized Geoffrion candidate.
    :param weights: The scalarization weights, None for equal weights.
    :param M: The trade-off bound checked at the scalarized candidate.
    :param crosscheck: Also run the four-condition cross-check per level.
    :return: The :class:`GeoffrionExistenceReport`.  The status is refuted
        when the recession witness exists, sufficient when the recession
        condition and properness hold at every probed sublevel, otherwise
        inconclusive.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    schedule = DEFAULT_SCHEDULE if schedule is None else schedule
    recession = recession_probe(problem, schedule, seed, t, threads)
    levels = []
    proper = True
    for ybar in sublevel_grid(problem, schedule, seed, t, threads):
        samples = shell_sampler(problem, ybar, schedule, seed, t, threads)
        section = bounded_section_probe(problem, ybar, schedule, seed, t, threads, samples)
        properness = properness_probe(problem, ybar, schedule, seed, t, threads, samples)
        entry = {'ybar': list(ybar.ybar), 'section': section.status.value, 'proper': properness.status.value}
        if crosscheck and section.holds:
            entry['crosscheck'] = theorem31_crosscheck(problem, ybar, schedule, mode, seed, t, threads).conditions
        proper = proper and section.holds and properness.holds
        levels.append(entry)
    scalarized = None
    if box is not None:
        weights = (1.0 / problem.m,) * problem.m if weights is None else weights
        cfg = ScalarizationConfig(weights, None, box)
        r = scalarize_solve(problem, cfg, t, threads)
        samples, _ = feasible_grid(problem, oracle_grid(as_box(box, problem.n)), t.act_tol)
        scalarized = r.to_dict()
        if r.verdict.holds:
            scalarized['geoffrion'] = geoffrion_check(problem, r.x, M, samples).to_dict()
    if not recession.eq8_holds:
        status = 'refuted'
    elif proper:
        status = 'sufficient'
    else:
        status = 'inconclusive'
    log.info('geoffrion existence: %s', status)
    return GeoffrionExistenceReport(status, recession, tuple(levels), scalarized)


@dataclasses.dataclass(frozen=True)
class ParetoExistenceReport:
    """Evidence on the existence of Pareto efficient solutions at one sublevel.

    :var section: The bounded-section :class:`Verdict`.
    :var kzero: The critical-value cloud.
    :var clouds: The dict of asymptotic clouds by name.
    :var inclusions: The dict of cloud-inclusion flags by name.
    """
    section: Verdict
    kzero: object
    clouds: dict
    inclusions: dict

    @property
    def exists(self):
        return self.section.holds and any(self.inclusions.values())

    @property
    def consistent(self):
        return len(set(self.inclusions.values())) == 1

    def to_dict(self):
        return {
            'exists_evidence': self.exists,
            'consistent': self.consistent,
            'inclusions': dict(self.inclusions),
            'section': self.section.to_dict(),
            'kzero': self.kzero.to_dict(),
            'clouds': {k: v.to_dict() for k, v in self.clouds.items()},
        }


def pareto_existence_report(problem, ybar, box, schedule=None, mode=RabierMode.FULL, seed=0, grid=11,
                            thresholds=None, threads=None):
    """Check the cloud inclusions characterizing Pareto existence at ybar.

    With a bounded section at ybar, a Pareto efficient solution exists when
    any asymptotic cloud lies inside the critical-value cloud within
    cluster_radius.  The three inclusions are equivalent and reported
    separately.

    :return: The :class:`ParetoExistenceReport`.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    ybar = as_sublevel(ybar, problem.m)
    schedule = DEFAULT_SCHEDULE if schedule is None else schedule
    samples = shell_sampler(problem, ybar, schedule, seed, t, threads)
    section = bounded_section_probe(problem, ybar, schedule, seed, t, threads, samples)
    kzero = k_zero_cloud(problem, ybar, box, grid, mode, t, threads)
    args = (problem, ybar, schedule, mode, seed, t, threads, samples)
    clouds = {'ps': ps_probe(*args), 'weak_ps': weak_ps_probe(*args), 'mtame': mtame_probe(*args)}
    inclusions = {}
    for name, cloud in clouds.items():
        inclusions[name] = all(kzero.contains(c.y, t.cluster_radius) for c in cloud.candidates)
    return ParetoExistenceReport(section, kzero, clouds, inclusions)
