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

"""Brute-force ground truth for tests and verification steps.

These routines share no code with the solvers they check: dominance is
tested with its own array comparison and min-norm values come from
exhaustive enumeration.
"""

import dataclasses
import functools
import itertools
import logging
import math
import numpy as np
from scipy.special import comb
from .errors import GridSizeError, InputError


log = logging.getLogger(__name__)
MAX_GRID_SIZE = 10_000_000
MAX_VERTICES = 8
MAX_RAYS = 4


@dataclasses.dataclass(frozen=True)
class GridSpec:
    """A tensor grid over a finite box.

    :param lower: The per-dimension lower bounds.
    :param upper: The per-dimension upper bounds.
    :param steps: The per-dimension point counts, each at least 2.
    """
    lower: tuple
    upper: tuple
    steps: tuple

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        steps = tuple(int(v) for v in self.steps)
        if not len(lower) or len(lower) != len(upper) or len(lower) != len(steps):
            raise InputError('GridSpec requires equal nonzero lengths')
        for lo, hi in zip(lower, upper):
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise InputError(f'Invalid grid interval [{lo}, {hi}]')
        if any(s < 2 for s in steps):
            raise InputError('GridSpec counts must be at least 2')
        if math.prod(steps) > MAX_GRID_SIZE:
            raise GridSizeError(f'grid size {math.prod(steps)} exceeds {MAX_GRID_SIZE}')
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)
        object.__setattr__(self, 'steps', steps)

    @staticmethod
    def from_step(box, step):
        """Construct a grid with a uniform spacing.

        :param box: The sequence of (lo, hi) pairs or a finite :class:`Box`.
        :param step: The positive spacing.
        """
        if step <= 0:
            raise InputError('grid step must be positive')
        if hasattr(box, 'lower'):
            pairs = list(zip(box.lower, box.upper))
        else:
            pairs = [tuple(p) for p in np.asarray(box, dtype=float).reshape((-1, 2))]
        counts = [max(2, int(math.floor((hi - lo) / step + 1e-9)) + 1) for lo, hi in pairs]
        if math.prod(counts) > MAX_GRID_SIZE:
            raise GridSizeError(f'grid size {math.prod(counts)} exceeds {MAX_GRID_SIZE}')
        return GridSpec(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), tuple(counts))

    @property
    def dim(self):
        return len(self.steps)

    @property
    def size(self):
        return math.prod(self.steps)

    def points(self):
        """Get the (N, n) grid points in row-major order."""
        axes = [np.linspace(lo, hi, s) for lo, hi, s in zip(self.lower, self.upper, self.steps)]
        mesh = np.meshgrid(*axes, indexing='ij')
        return np.stack([m.ravel() for m in mesh], axis=1)

    def refined(self):
        """Get the grid with doubled counts."""
        return GridSpec(self.lower, self.upper, tuple(2 * s for s in self.steps))


def feasible_grid(problem, grid, tol=0.0):
    """Get the feasible grid points and their finite images.

    :return: The tuple (x, images) of (N, n) and (N, m) arrays.
    """
    if grid.dim != problem.n:
        raise InputError(f'grid dimension {grid.dim} does not match n={problem.n}')
    x = grid.points()
    x = x[problem.feasible.contains_array(x, tol)]
    images = problem.evaluate_array(x)
    keep = np.all(np.isfinite(images), axis=1)
    return x[keep], images[keep]


def _dominated_by(archive, y):
    if not len(archive):
        return False
    a = np.asarray(archive)
    return bool(np.any(np.all(a <= y, axis=1) & np.any(a < y, axis=1)))


def grid_pareto(problem, grid, tol=0.0):
    """Find the nondominated feasible grid points.

    Images are scanned in lexicographic order, where every dominating image
    precedes the images it dominates, so each point is only compared against
    the nondominated archive built so far.

    :param problem: The :class:`Problem`.
    :param grid: The :class:`GridSpec`.
    :param tol: The feasibility slack.
    :return: The tuple (x, images) of the nondominated points in grid order.
    """
    x, images = feasible_grid(problem, grid, tol)
    if not len(x):
        return x, images
    order = np.lexsort(images.T[::-1])
    archive = []
    kept = []
    for i in order:
        y = images[i]
        if not _dominated_by(archive, y):
            archive.append(y)
            kept.append(i)
    kept = np.sort(np.array(kept, dtype=int))
    log.debug('grid_pareto: %d of %d points nondominated', len(kept), len(x))
    return x[kept], images[kept]


@functools.lru_cache(maxsize=256)
def _compositions(total, parts):
    if parts == 1:
        return np.array([[total]])
    rows = []
    for k in range(total + 1):
        sub = _compositions(total - k, parts - 1)
        rows.append(np.hstack((np.full((len(sub), 1), k), sub)))
    return np.vstack(rows)


def simplex_grid(count, step):
    """Get the barycentric grid with spacing step over a count-vertex simplex.

    :return: The (N, count) array of nonnegative weights summing to 1.
    :raise GridSizeError: When N exceeds the grid-size guard.
    """
    total = int(round(1.0 / step))
    size = comb(total + count - 1, count - 1, exact=True)
    if size > MAX_GRID_SIZE:
        raise GridSizeError(f'simplex grid size {size} exceeds {MAX_GRID_SIZE}')
    return _compositions(total, count) / total


def brute_min_norm(polytope, cone=None, lam_step=0.02, ray_cap=4.0):
    """Exhaustive upper bound on the distance from 0 to conv(vertices) + cone.

    The vertex weights range over a barycentric grid.  The ray coefficients
    come from every subset of rays: the least-squares coefficients of the
    subset, clipped to [0, ray_cap], give a feasible point of the cone.  The
    result exceeds the exact distance by at most O(lam_step * max ||v||)
    when the optimal ray coefficients do not exceed ray_cap.

    :param polytope: The :class:`Polytope`, at most 8 vertices.
    :param cone: The :class:`Cone`, at most 4 rays, None for {0}.
    :param lam_step: The barycentric spacing in (0, 0.1].
    :param ray_cap: The positive ray coefficient bound.
    :return: The distance upper bound.
    """
    if not 0 < lam_step <= 0.1:
        raise InputError('lam_step must be in (0, 0.1]')
    if ray_cap <= 0:
        raise InputError('ray_cap must be positive')
    v = polytope.vertices
    rays = np.empty((0, v.shape[1])) if cone is None else cone.rays
    if len(v) > MAX_VERTICES or len(rays) > MAX_RAYS:
        raise GridSizeError(f'brute force limited to {MAX_VERTICES} vertices and {MAX_RAYS} rays')
    p = simplex_grid(len(v), lam_step) @ v
    best = float(np.min(np.linalg.norm(p, axis=1)))
    for count in range(1, len(rays) + 1):
        for subset in itertools.combinations(range(len(rays)), count):
            r = rays[list(subset)]
            t = -p @ np.linalg.pinv(r)
            t = np.clip(t, 0.0, ray_cap)
            best = min(best, float(np.min(np.linalg.norm(p + t @ r, axis=1))))
    return best
