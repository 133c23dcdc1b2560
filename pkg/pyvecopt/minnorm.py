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

"""Min-norm points and the Rabier function.

The Rabier function at x is the distance from the origin to

    { sum_i lambda_i v_i + w : lambda in the unit simplex,
      v_i in subdiff(f_i) u subdiff(-f_i), w in N(x; Omega) }.

Since the union over the simplex of sum_i lambda_i S_i equals
conv(u_i S_i) for convex S_i, each choice of signs reduces to one
min-norm-point problem over a polytope plus a polyhedral cone.  The
computed value uses the polytope bounds from :mod:`pyvecopt.calculus`,
so it is a lower bound on the exact value and equal to it for smooth
objectives.
"""

import dataclasses
import enum
import itertools
import logging
import numpy as np
from . import config
from .calculus import Cone, Polytope, normal_cone, value_and_subdiff
from .errors import InfeasiblePointError, InputError, NumericalError
from .problem import as_point


log = logging.getLogger(__name__)
_EPS = 1e-12
_BOUND_CAP = 2.0 ** 60


class RabierMode(enum.Enum):
    """Select the subgradient sets entering the Rabier function."""
    FULL = 'full'
    """Use subdiff(f_i) u subdiff(-f_i)."""
    PLUS_ONLY = 'plus-only'
    """Use subdiff(f_i) only."""

    @staticmethod
    def parse(value):
        if isinstance(value, RabierMode):
            return value
        try:
            return RabierMode(str(value).lower().replace('_', '-'))
        except ValueError:
            raise InputError(f'Unknown Rabier mode: {value}')

    def sign_patterns(self, m):
        if self is RabierMode.PLUS_ONLY:
            return [(1,) * m]
        return list(itertools.product((1, -1), repeat=m))


@dataclasses.dataclass(frozen=True, eq=False)
class MinNormResult:
    """The solution of a min-norm-point problem.

    :var value: The distance from the origin, ||point||.
    :var point: The attaining vector z.
    :var hull_coeffs: The convex coefficients over the polytope vertices.
    :var cone_coeffs: The nonnegative coefficients over the cone rays.
    :var gap: The duality gap ||z||^2 - min_v <z, v> at termination.
    :var iterations: The number of major iterations.
    """
    value: float
    point: np.ndarray
    hull_coeffs: np.ndarray
    cone_coeffs: np.ndarray
    gap: float
    iterations: int

    def to_dict(self):
        return {
            'value': self.value,
            'point': self.point.tolist(),
            'hull_coeffs': self.hull_coeffs.tolist(),
            'cone_coeffs': self.cone_coeffs.tolist(),
            'gap': self.gap,
            'iterations': self.iterations,
        }


def _affine_min(q):
    """Get the affine coefficients of the min-norm point of aff(q)."""
    if len(q) == 1:
        return np.ones(1)
    d = q[1:] - q[0]
    beta = np.linalg.lstsq(d.T, -q[0], rcond=None)[0]
    return np.concatenate(([1.0 - np.sum(beta)], beta))


def _wolfe(q, gap_tol, max_iter):
    """Wolfe's min-norm-point algorithm over conv(q).

    :return: The tuple (support, weights, z, gap, iterations, converged).
    """
    norms = np.einsum('ij,ij->i', q, q)
    j = int(np.argmin(norms))
    s = [j]
    w = np.ones(1)
    z = q[j].copy()
    gap = np.inf
    for iteration in range(1, max_iter + 1):
        dots = q @ z
        j = int(np.argmin(dots))
        gap = float(z @ z - dots[j])
        if gap <= gap_tol:
            return s, w, z, gap, iteration, True
        if j in s:
            log.warning('min-norm stalled with gap %g above %g', gap, gap_tol)
            return s, w, z, gap, iteration, False
        s.append(j)
        w = np.append(w, 0.0)
        while True:
            alpha = _affine_min(q[s])
            if np.all(alpha > _EPS):
                w = alpha
                break
            neg = alpha <= _EPS
            denom = w[neg] - alpha[neg]
            with np.errstate(divide='ignore', invalid='ignore'):
                ratios = np.where(denom > 0, w[neg] / denom, np.inf)
            theta = float(np.min(ratios))
            if not np.isfinite(theta):
                theta = 1.0
            w = theta * alpha + (1.0 - theta) * w
            keep = w > _EPS
            if not np.any(keep):
                keep[int(np.argmax(w))] = True
            s = [k for k, flag in zip(s, keep) if flag]
            w = w[keep]
            w = w / np.sum(w)
        z = w @ q[s]
    return s, w, z, gap, max_iter, False


def _solve(points, rays, tol, max_iter):
    """Minimize ||z|| over conv(points) + cone(rays)."""
    points = np.asarray(points, dtype=float)
    count, n = points.shape
    scale = max(1.0, float(np.max(np.linalg.norm(points, axis=1))))
    gap_tol = tol * scale * scale
    ray_norms = np.linalg.norm(rays, axis=1) if len(rays) else np.empty(0)
    unit = rays / ray_norms[:, np.newaxis] if len(rays) else rays
    bound = 10.0 * scale
    iterations = 0
    while True:
        if len(unit):
            shifted = points[:, np.newaxis, :] + bound * unit[np.newaxis, :, :]
            q = np.vstack((points, shifted.reshape((-1, n))))
        else:
            q = points
        s, w, z, gap, it, converged = _wolfe(q, gap_tol, max_iter - iterations)
        iterations += it
        hull = np.zeros(count)
        cone = np.zeros(len(unit))
        for k, weight in zip(s, w):
            if k < count:
                hull[k] += weight
            else:
                i, r = divmod(k - count, len(unit))
                hull[i] += weight
                cone[r] += weight * bound / ray_norms[r]
        point = hull @ points
        if len(cone):
            point = point + cone @ rays
        result = MinNormResult(float(np.linalg.norm(point)), point, hull, cone, gap, iterations)
        if not converged:
            raise NumericalError(f'min-norm point did not converge, gap {gap:g} after {iterations} iterations', result)
        if not len(unit) or np.all(unit @ z >= -tol * scale):
            return result
        if bound >= _BOUND_CAP:
            raise NumericalError('min-norm cone bound exceeded', result)
        bound *= 2.0


def min_norm_point(polytope, cone=None, tol=config.DEFAULT.qp_tol, max_iter=config.DEFAULT.max_iter):
    """Find the point of minimum norm in conv(vertices) + cone.

    :param polytope: The :class:`Polytope`.
    :param cone: The :class:`Cone`, None for the trivial cone.
    :param tol: The positive duality-gap tolerance, relative to the
        squared vertex scale max(1, max_v ||v||)^2.
    :param max_iter: The iteration limit.
    :return: The :class:`MinNormResult`.  hull_coeffs follow the vertex
        order of the polytope and cone_coeffs the ray order of the cone.
    :raise NumericalError: On non-convergence, with the best iterate.
    """
    if tol <= 0:
        raise InputError('tol must be positive')
    if cone is None:
        cone = Cone(dim=polytope.dim)
    if cone.dim != polytope.dim:
        raise InputError(f'Cone dimension {cone.dim} does not match polytope dimension {polytope.dim}')
    return _solve(polytope.vertices, cone.rays, tol, max_iter)


@dataclasses.dataclass(frozen=True, eq=False)
class RabierResult:
    """The attaining data of a Rabier or Gamma-residual computation.

    :var value: The distance from the origin.
    :var signs: The attaining sign pattern, +1 for subdiff(f_i) and -1
        for subdiff(-f_i).
    :var lambdas: The per-objective multipliers.
    :var mu: The multiplier of x for Gamma residuals, otherwise 0.
    :var result: The attaining :class:`MinNormResult` over the stacked
        vertices of every objective.
    """
    value: float
    signs: tuple
    lambdas: np.ndarray
    mu: float
    result: MinNormResult

    def to_dict(self):
        return {
            'value': self.value,
            'signs': list(self.signs),
            'lambdas': self.lambdas.tolist(),
            'mu': self.mu,
        }


def _vertices(p):
    return p.vertices if isinstance(p, Polytope) else np.atleast_2d(np.asarray(p, dtype=float))


def rabier_polytopes(polytopes, cone, mode=RabierMode.FULL, tol=config.DEFAULT.qp_tol,
                     max_iter=config.DEFAULT.max_iter, gamma_point=None):
    """Compute the Rabier value from per-objective subgradient polytopes.

    :param polytopes: The m polytopes bounding subdiff(f_i).  The sets
        subdiff(-f_i) are their negations.
    :param cone: The normal :class:`Cone`.
    :param mode: The :class:`RabierMode`.
    :param tol: The min-norm tolerance.
    :param max_iter: The min-norm iteration limit.
    :param gamma_point: The point x for the Gamma residual, which adds the
        term mu * x with sum(lambda) + |mu| = 1.  None computes the Rabier
        function.
    :return: The :class:`RabierResult` minimizing over the sign patterns.
    """
    mode = RabierMode.parse(mode)
    plus = [_vertices(p) for p in polytopes]
    m = len(plus)
    owners = np.concatenate([np.full(len(v), i) for i, v in enumerate(plus)])
    rays = cone.rays
    sigmas = (0,) if gamma_point is None else (1, -1)
    best = None
    for signs in mode.sign_patterns(m):
        stacked = np.vstack([s * v for s, v in zip(signs, plus)])
        for sigma in sigmas:
            points = stacked if not sigma else np.vstack((stacked, sigma * gamma_point))
            r = _solve(points, rays, tol, max_iter)
            if best is None or r.value < best[0].value:
                best = (r, signs, sigma)
    r, signs, sigma = best
    lambdas = np.bincount(owners, weights=r.hull_coeffs[:len(owners)], minlength=m)
    mu = float(sigma * r.hull_coeffs[-1]) if sigma else 0.0
    return RabierResult(r.value, tuple(signs), lambdas, mu, r)


def rabier(problem, x, mode=RabierMode.FULL, thresholds=None, gamma=False):
    """Compute the Rabier function or the Gamma residual with its multipliers.

    :param problem: The :class:`Problem`.
    :param x: The feasible point.
    :param mode: The :class:`RabierMode`.
    :param thresholds: The :class:`Thresholds`, None for the defaults.
    :param gamma: False for the Rabier function, True for the Gamma residual.
    :return: The :class:`RabierResult`.
    :raise InfeasiblePointError: If x is not feasible within act_tol.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    x = as_point(x, problem.n)
    if not problem.feasible.contains(x, t.act_tol):
        raise InfeasiblePointError(f'Point {x.tolist()} is not feasible')
    polytopes = [value_and_subdiff(f, x, t.tie_tol)[1] for f in problem.objectives]
    cone = normal_cone(problem.feasible, x, t.act_tol)
    return rabier_polytopes(polytopes, cone, mode, t.qp_tol, t.max_iter,
                            gamma_point=x if gamma else None)


def rabier_nu(problem, x, mode=RabierMode.FULL, tol=None, thresholds=None):
    """Compute the Rabier function value at a feasible point.

    :param problem: The :class:`Problem`.
    :param x: The feasible point.
    :param mode: The :class:`RabierMode`.
    :param tol: The min-norm tolerance, None for thresholds.qp_tol.
    :param thresholds: The :class:`Thresholds`, None for the defaults.
    :return: The nonnegative value, a lower bound on the exact Rabier
        function that is exact for smooth objectives.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    t = t.replace(qp_tol=tol)
    return rabier(problem, x, mode, t).value


def gamma_residual(problem, x, mode=RabierMode.FULL, tol=None, thresholds=None):
    """Compute the distance from the origin to the Gamma set at x.

    x belongs to Gamma(f, Omega) when the residual is at most gamma_tol.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    t = t.replace(qp_tol=tol)
    return rabier(problem, x, mode, t, gamma=True).value


def stationarity_gap(problem, x, mode=RabierMode.FULL, thresholds=None):
    """Check the necessary optimality condition nu(x) = 0.

    :return: The tuple (nu, stationary) with stationary = nu <= crit_tol.
    """
    t = config.DEFAULT if thresholds is None else thresholds
    nu = rabier_nu(problem, x, mode, thresholds=t)
    return nu, bool(nu <= t.crit_tol)
