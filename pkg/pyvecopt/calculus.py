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

"""Polyhedral subdifferential calculus.

:func:`subdiff` returns a :class:`Polytope` that contains the limiting
subdifferential of an expression.  Sums map to Minkowski sums, max and min
nodes map to the convex hull of their active branches, and smooth nodes use
the chain rule.  The result is a singleton, the gradient, for smooth
expressions.  It is only an over-approximation at active max/min ties, so
quantities computed from it bound their exact counterparts from below.

:func:`normal_cone` returns the limiting normal cone of the supported
feasible sets as a finitely generated :class:`Cone`.
"""

import logging
import math
import numpy as np
from scipy.spatial import ConvexHull
from .errors import DegenerateConstraintError, InfeasiblePointError, InputError, NumericalError
from .expr import Abs, Add, Constant, Cos, Exp, IntPow, Max, Min, Mul, Neg, Sin, Variable
from .problem import Box, FullSpace, Polyhedron, SmoothIneq, as_point


log = logging.getLogger(__name__)
TIE_TOL_DEFAULT = 1e-9
ACT_TOL_DEFAULT = 1e-9
RANK_TOL = 1e-8
_PRUNE_SIZE = 64


def _unique_rows(v):
    return np.unique(np.asarray(v, dtype=float), axis=0)


def _prune(v):
    """Reduce a large vertex list to the vertices of its convex hull."""
    if len(v) <= _PRUNE_SIZE:
        return v
    n = v.shape[1]
    if n == 1:
        return np.array([[v.min()], [v.max()]])
    try:
        return v[np.sort(ConvexHull(v).vertices)]
    except (ValueError, RuntimeError):
        log.debug('hull pruning skipped for degenerate vertex set')
        return v


class Polytope:
    """A polytope conv(vertices) in R^n.

    :param vertices: The nonempty (k, n) array-like of vertices.  Duplicate
        vertices are removed and the remaining ones sorted.
    """

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or not v.shape[0] or not v.shape[1]:
            raise InputError(f'Polytope vertices must be a nonempty (k, n) array, got shape {v.shape}')
        if not np.all(np.isfinite(v)):
            raise InputError('Polytope vertices must be finite')
        self._vertices = _prune(_unique_rows(v))
        self._vertices.setflags(write=False)

    def __str__(self):
        return f'Polytope({self._vertices.tolist()})'

    def __repr__(self):
        return str(self)

    def __len__(self):
        return len(self._vertices)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.vertex_set() == other.vertex_set()

    def __hash__(self):
        return hash(frozenset(self.vertex_set()))

    def __neg__(self):
        return Polytope(-self._vertices)

    @property
    def vertices(self):
        return self._vertices

    @property
    def dim(self):
        return self._vertices.shape[1]

    def vertex_set(self):
        return set(tuple(v) for v in self._vertices.tolist())

    def is_singleton(self):
        return len(self._vertices) == 1

    def centroid(self):
        return np.mean(self._vertices, axis=0)

    def scale(self, c):
        return Polytope(float(c) * self._vertices)

    def minkowski(self, other):
        """Get the Minkowski sum self + other."""
        v = self._vertices[:, np.newaxis, :] + other.vertices[np.newaxis, :, :]
        return Polytope(v.reshape((-1, self.dim)))

    def hull(self, *others):
        """Get the convex hull of the union with other polytopes."""
        return Polytope(np.vstack([self._vertices] + [o.vertices for o in others]))


class Cone:
    """The finitely generated cone {sum_j t_j r_j : t_j >= 0}.

    :param rays: The (k, n) array-like of nonzero rays, k may be 0.
    :param dim: The dimension n, required when rays is empty.
    """

    def __init__(self, rays=None, dim=None):
        if rays is None or not len(rays):
            if dim is None:
                raise InputError('Cone dimension required for the trivial cone')
            r = np.empty((0, int(dim)))
        else:
            r = np.asarray(rays, dtype=float)
            if r.ndim != 2:
                raise InputError(f'Cone rays must be a (k, n) array, got shape {r.shape}')
            if dim is not None and r.shape[1] != dim:
                raise InputError(f'Cone ray dimension {r.shape[1]} does not match {dim}')
            if not np.all(np.isfinite(r)) or np.any(np.linalg.norm(r, axis=1) == 0):
                raise InputError('Cone rays must be finite and nonzero')
            r = _unique_rows(r)
        self._rays = r
        self._rays.setflags(write=False)

    def __str__(self):
        return f'Cone({self._rays.tolist()})'

    def __repr__(self):
        return str(self)

    def __len__(self):
        return len(self._rays)

    @property
    def rays(self):
        return self._rays

    @property
    def dim(self):
        return self._rays.shape[1]

    def is_trivial(self):
        return not len(self._rays)

    def ray_set(self):
        return set(tuple(r) for r in self._rays.tolist())


def _minkowski_all(parts):
    v = parts[0]
    for p in parts[1:]:
        v = (v[:, np.newaxis, :] + p[np.newaxis, :, :]).reshape((-1, v.shape[1]))
        v = _prune(_unique_rows(v))
    return v


def _active_union(parts, active):
    return _prune(_unique_rows(np.vstack([parts[j] for j in active])))


def _visit(node, x, tie_tol):
    """Get the value and over-approximating subgradient vertices of node at x."""
    n = len(x)
    if isinstance(node, Constant):
        return node.value, np.zeros((1, n))
    if isinstance(node, Variable):
        g = np.zeros((1, n))
        g[0, node.index] = 1.0
        return float(x[node.index]), g
    if isinstance(node, Neg):
        v, p = _visit(node.child, x, tie_tol)
        return -v, -p
    if isinstance(node, Add):
        values, parts = zip(*[_visit(c, x, tie_tol) for c in node.children])
        return math.fsum(values), _minkowski_all(parts)
    if isinstance(node, Mul):
        values, parts = zip(*[_visit(c, x, tie_tol) for c in node.children])
        scaled = []
        for j, p in enumerate(parts):
            coef = math.prod(v for k, v in enumerate(values) if k != j)
            scaled.append(_unique_rows(coef * p))
        return math.prod(values), _minkowski_all(scaled)
    if isinstance(node, IntPow):
        v, p = _visit(node.child, x, tie_tol)
        k = node.exponent
        if k == 0:
            return 1.0, np.zeros((1, n))
        return v ** k, _unique_rows(k * v ** (k - 1) * p)
    if isinstance(node, Sin):
        v, p = _visit(node.child, x, tie_tol)
        return math.sin(v), _unique_rows(math.cos(v) * p)
    if isinstance(node, Cos):
        v, p = _visit(node.child, x, tie_tol)
        return math.cos(v), _unique_rows(-math.sin(v) * p)
    if isinstance(node, Exp):
        v, p = _visit(node.child, x, tie_tol)
        e = math.exp(v)
        return e, _unique_rows(e * p)
    if isinstance(node, Max):
        values, parts = zip(*[_visit(c, x, tie_tol) for c in node.children])
        top = max(values)
        active = [j for j, v in enumerate(values) if v >= top - tie_tol]
        return top, _active_union(parts, active)
    if isinstance(node, Min):
        # min(u_1, ...) = -max(-u_1, ...): the negations cancel vertexwise
        values, parts = zip(*[_visit(c, x, tie_tol) for c in node.children])
        bottom = min(values)
        active = [j for j, v in enumerate(values) if v <= bottom + tie_tol]
        return bottom, _active_union(parts, active)
    if isinstance(node, Abs):
        return _visit(node.canonical(), x, tie_tol)
    raise InputError(f'Unsupported expression node {type(node).__name__}')


def value_and_subdiff(expr, x, tie_tol=TIE_TOL_DEFAULT):
    """Evaluate an expression together with its subdifferential bound.

    :param expr: The :class:`Expression`.
    :param x: The finite point.
    :param tie_tol: The activity tolerance for max and min branches.
    :return: The tuple (value, :class:`Polytope`).
    :raise NumericalError: When a value or subgradient overflows.
    """
    x = as_point(x)
    if not np.all(np.isfinite(x)):
        raise InputError('subdiff requires a finite point')
    try:
        v, p = _visit(expr.canonical(), x, tie_tol)
    except OverflowError:
        raise NumericalError(f'subgradient overflow at {x.tolist()}')
    if not np.all(np.isfinite(p)):
        raise NumericalError(f'subgradient overflow at {x.tolist()}')
    return v, Polytope(p)


def subdiff(expr, x, tie_tol=TIE_TOL_DEFAULT):
    """Compute a polytope containing the limiting subdifferential.

    :param expr: The :class:`Expression`.
    :param x: The finite point.
    :param tie_tol: The activity tolerance for max and min branches.
    :return: The :class:`Polytope`, the singleton gradient when no
        max or min node is tied at x.
    """
    return value_and_subdiff(expr, x, tie_tol)[1]


def neg_subdiff(expr, x, tie_tol=TIE_TOL_DEFAULT):
    """Compute the polytope bound on the subdifferential of -expr."""
    return subdiff(Neg(expr), x, tie_tol)


def gradient(expr, x, tie_tol=TIE_TOL_DEFAULT):
    """Get a representative subgradient, the gradient for smooth expressions."""
    return subdiff(expr, x, tie_tol).centroid()


def normal_cone(feasible, x, act_tol=ACT_TOL_DEFAULT):
    """Compute the limiting normal cone to a feasible set.

    :param feasible: The :class:`FeasibleSet`.
    :param x: The point, feasible within act_tol.
    :param act_tol: The constraint activity tolerance.
    :return: The :class:`Cone` generated by the active constraint normals.
    :raise InfeasiblePointError: If x is not feasible within act_tol.
    :raise DegenerateConstraintError: If active smooth constraint gradients
        are linearly dependent.
    """
    x = as_point(x, feasible.dim)
    n = len(x)
    if not feasible.contains(x, act_tol):
        raise InfeasiblePointError(f'Point {x.tolist()} is not feasible')
    if isinstance(feasible, FullSpace):
        return Cone(dim=n)
    if isinstance(feasible, Box):
        rays = []
        for i, (lo, hi) in enumerate(zip(feasible.lower, feasible.upper)):
            if math.isfinite(hi) and x[i] >= hi - act_tol:
                r = np.zeros(n)
                r[i] = 1.0
                rays.append(r)
            if math.isfinite(lo) and x[i] <= lo + act_tol:
                r = np.zeros(n)
                r[i] = -1.0
                rays.append(r)
        return Cone(rays, dim=n)
    if isinstance(feasible, Polyhedron):
        a, b = feasible.a, feasible.b
        active = a @ x >= b - act_tol
        return Cone(a[active], dim=n)
    if isinstance(feasible, SmoothIneq):
        rays = []
        for g in feasible.constraints:
            if g.evaluate(x) >= -act_tol:
                rays.append(gradient(g, x))
        if rays:
            rays = np.array(rays)
            if np.linalg.matrix_rank(rays, tol=RANK_TOL) < len(rays):
                raise DegenerateConstraintError(f'Active constraint gradients are degenerate at {x.tolist()}')
        return Cone(rays, dim=n)
    raise InputError(f'Unsupported feasible set {type(feasible).__name__}')
