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

"""The vector optimization problem model.

A :class:`Problem` minimizes f = (f_1, ..., f_m) over a closed feasible set
with respect to the componentwise order.  All types are immutable.
"""

import dataclasses
import math
import numpy as np
from .errors import InputError
from .expr import Expression


def as_point(x, n=None):
    """Convert to a 1-D float array and check the dimension.

    :param x: The point as a sequence of floats.
    :param n: The expected dimension, None to skip the check.
    :return: The point as a float array.
    :raise InputError: On dimension mismatch.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1:
        raise InputError(f'Point must be one dimensional, got shape {x.shape}')
    if n is not None and len(x) != n:
        raise InputError(f'Point dimension {len(x)} does not match n={n}')
    return x


class FeasibleSet:
    """Base class for the feasible-set variants.

    :var dim: The input dimension, None when any dimension is accepted.
    """

    dim = None

    def _check(self, x):
        return as_point(x, self.dim)

    def contains(self, x, tol=0.0):
        """Check membership up to an additive slack.

        :param x: The point.
        :param tol: The nonnegative constraint slack.
        :return: True if every constraint holds up to tol.
        """
        raise NotImplementedError()

    def contains_array(self, x, tol=0.0):
        """Vectorized :meth:`contains` over an (N, n) array."""
        return np.array([self.contains(p, tol) for p in x], dtype=bool)

    def project(self, x):
        """Map a point towards the feasible set.

        The result is the exact Euclidean projection for boxes and an
        approximate projection for polyhedra.  Smooth inequality sets
        return the point unchanged and rely on rejection.
        """
        return self._check(x)


@dataclasses.dataclass(frozen=True)
class FullSpace(FeasibleSet):
    dim: int = None

    def contains(self, x, tol=0.0):
        self._check(x)
        return True

    def contains_array(self, x, tol=0.0):
        return np.ones(len(x), dtype=bool)


@dataclasses.dataclass(frozen=True)
class Box(FeasibleSet):
    lower: tuple
    upper: tuple

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        if len(lower) != len(upper) or not len(lower):
            raise InputError('Box bounds must be nonempty with equal lengths')
        for lo, hi in zip(lower, upper):
            if math.isnan(lo) or math.isnan(hi) or lo > hi:
                raise InputError(f'Invalid box interval [{lo}, {hi}]')
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @property
    def dim(self):
        return len(self.lower)

    def contains(self, x, tol=0.0):
        x = self._check(x)
        return bool(np.all(x >= np.array(self.lower) - tol) and np.all(x <= np.array(self.upper) + tol))

    def contains_array(self, x, tol=0.0):
        lo = np.array(self.lower) - tol
        hi = np.array(self.upper) + tol
        return np.all((x >= lo) & (x <= hi), axis=1)

    def project(self, x):
        return np.clip(self._check(x), self.lower, self.upper)


@dataclasses.dataclass(frozen=True)
class Polyhedron(FeasibleSet):
    """The set {x : a_j . x <= b_j for every row j}."""
    normals: tuple
    offsets: tuple

    def __post_init__(self):
        normals = tuple(tuple(float(v) for v in a) for a in self.normals)
        offsets = tuple(float(b) for b in self.offsets)
        if not len(normals) or len(normals) != len(offsets):
            raise InputError('Polyhedron requires one offset per nonempty normal row')
        if len(set(len(a) for a in normals)) != 1:
            raise InputError('Polyhedron normals must have equal dimension')
        for a, b in zip(normals, offsets):
            if not any(a):
                raise InputError('Polyhedron normal vectors must be nonzero')
            if not all(math.isfinite(v) for v in a) or not math.isfinite(b):
                raise InputError('Polyhedron rows must be finite')
        object.__setattr__(self, 'normals', normals)
        object.__setattr__(self, 'offsets', offsets)

    @property
    def dim(self):
        return len(self.normals[0])

    @property
    def a(self):
        return np.array(self.normals)

    @property
    def b(self):
        return np.array(self.offsets)

    def contains(self, x, tol=0.0):
        x = self._check(x)
        return bool(np.all(self.a @ x <= self.b + tol))

    def contains_array(self, x, tol=0.0):
        return np.all(x @ self.a.T <= self.b + tol, axis=1)

    def project(self, x, sweeps=50):
        x = self._check(x).copy()
        a, b = self.a, self.b
        norms2 = np.sum(a * a, axis=1)
        for _ in range(sweeps):
            moved = False
            for j in range(len(b)):
                excess = a[j] @ x - b[j]
                if excess > 0:
                    x -= (excess / norms2[j]) * a[j]
                    moved = True
            if not moved:
                break
        return x


@dataclasses.dataclass(frozen=True)
class SmoothIneq(FeasibleSet):
    """The set {x : g_j(x) <= 0 for every j} with smooth g_j."""
    constraints: tuple
    dim: int = None

    def __post_init__(self):
        constraints = tuple(self.constraints)
        if not len(constraints):
            raise InputError('SmoothIneq requires at least one constraint')
        for g in constraints:
            if not isinstance(g, Expression):
                raise InputError(f'Invalid constraint {g!r}')
            if not g.is_smooth():
                raise InputError('SmoothIneq constraints must not contain abs, max or min')
        object.__setattr__(self, 'constraints', constraints)

    def values(self, x):
        return np.array([g.evaluate(x) for g in self.constraints])

    def contains(self, x, tol=0.0):
        x = self._check(x)
        return bool(np.all(self.values(x) <= tol))

    def contains_array(self, x, tol=0.0):
        g = np.array([c.evaluate_array(x) for c in self.constraints])
        return np.all(g <= tol, axis=0)


@dataclasses.dataclass(frozen=True)
class SublevelBound:
    """The sublevel vector ybar in (R u {+inf})^m."""
    ybar: tuple

    def __post_init__(self):
        ybar = tuple(float(v) for v in np.atleast_1d(self.ybar))
        for v in ybar:
            if math.isnan(v) or v == -math.inf:
                raise InputError(f'Invalid sublevel entry {v}')
        object.__setattr__(self, 'ybar', ybar)

    @staticmethod
    def unrestricted(m):
        return SublevelBound((math.inf,) * m)

    @property
    def m(self):
        return len(self.ybar)

    @property
    def array(self):
        return np.array(self.ybar)

    def is_finite(self):
        return all(math.isfinite(v) for v in self.ybar)

    def is_unrestricted(self):
        return all(v == math.inf for v in self.ybar)

    def finite_norm(self):
        """The Euclidean norm of the finite entries."""
        y = self.array
        return float(np.linalg.norm(y[np.isfinite(y)]))


@dataclasses.dataclass(frozen=True)
class Problem:
    """The problem min f(x) subject to x in the feasible set.

    :param n: The input dimension.
    :param m: The number of objectives.
    :param objectives: The tuple of m :class:`Expression` objectives.
    :param feasible: The :class:`FeasibleSet`.
    """
    n: int
    m: int
    objectives: tuple
    feasible: FeasibleSet = None

    def __post_init__(self):
        objectives = tuple(self.objectives)
        feasible = FullSpace() if self.feasible is None else self.feasible
        if self.n < 1 or self.m < 1:
            raise InputError('n and m must be positive')
        if len(objectives) != self.m:
            raise InputError(f'Expected {self.m} objectives, got {len(objectives)}')
        exprs = list(objectives)
        if isinstance(feasible, SmoothIneq):
            exprs.extend(feasible.constraints)
        for e in exprs:
            if not isinstance(e, Expression):
                raise InputError(f'Invalid expression {e!r}')
            if e.max_variable() >= self.n:
                raise InputError(f'Variable index {e.max_variable()} exceeds n={self.n}')
        if feasible.dim is not None and feasible.dim != self.n:
            raise InputError(f'Feasible set dimension {feasible.dim} does not match n={self.n}')
        object.__setattr__(self, 'objectives', objectives)
        object.__setattr__(self, 'feasible', feasible)

    def evaluate(self, x):
        """Evaluate all objectives at one point.

        :param x: The point in R^n.
        :return: The (m,) array f(x).
        :raise InputError: On dimension mismatch.
        """
        x = as_point(x, self.n)
        return np.array([f.evaluate(x) for f in self.objectives])

    def evaluate_array(self, x):
        """Evaluate all objectives at an (N, n) array of points.

        :return: The (N, m) array of images.
        """
        x = np.asarray(x, dtype=float).reshape((-1, self.n))
        if not len(x):
            return np.empty((0, self.m))
        with np.errstate(invalid='ignore', over='ignore'):
            return np.stack([f.evaluate_array(x) for f in self.objectives], axis=1)

    def is_feasible(self, x, tol=0.0):
        return is_feasible(self.feasible, as_point(x, self.n), tol)

    def sublevel_member(self, ybar, x, tol=0.0):
        return sublevel_member(self, ybar, x, tol)


def evaluate(problem, x):
    """Evaluate f(x) = (f_1(x), ..., f_m(x))."""
    return problem.evaluate(x)


def is_feasible(feasible, x, tol=0.0):
    """Check x against every constraint up to the additive slack tol.

    :param feasible: The :class:`FeasibleSet`.
    :param x: The point.
    :param tol: The nonnegative slack.
    :return: True if feasible.
    """
    if tol < 0:
        raise InputError('tol must be nonnegative')
    return feasible.contains(x, tol)


def _as_sublevel(ybar):
    return ybar if isinstance(ybar, SublevelBound) else SublevelBound(ybar)


def sublevel_member(problem, ybar, x, tol=0.0):
    """Check whether x is feasible and f(x) <= ybar + tol componentwise.

    :param problem: The :class:`Problem`.
    :param ybar: The :class:`SublevelBound` or a sequence of m values.
    :param x: The point.
    :param tol: The nonnegative slack.
    :return: True on membership in the sublevel set.
    """
    ybar = _as_sublevel(ybar)
    if ybar.m != problem.m:
        raise InputError(f'ybar dimension {ybar.m} does not match m={problem.m}')
    x = as_point(x, problem.n)
    if not is_feasible(problem.feasible, x, tol):
        return False
    return bool(np.all(problem.evaluate(x) <= ybar.array + tol))


def sublevel_mask(problem, ybar, x, images, tol=0.0):
    """Vectorized sublevel membership.

    :param problem: The :class:`Problem`.
    :param ybar: The :class:`SublevelBound`.
    :param x: The (N, n) points.
    :param images: The (N, m) images of x.
    :param tol: The nonnegative slack.
    :return: The (N,) boolean mask.
    """
    ok = problem.feasible.contains_array(x, tol)
    ok &= np.all(np.isfinite(images), axis=1)
    ok &= np.all(images <= _as_sublevel(ybar).array + tol, axis=1)
    return ok
