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

"""Numeric thresholds and environment configuration."""

import dataclasses
import logging
import os
import psutil


log = logging.getLogger(__name__)
THREADS_ENV = 'PYVECOPT_THREADS'


@dataclasses.dataclass(frozen=True)
class Thresholds:
    """The numeric thresholds shared by all diagnostics.

    :param tie_tol: Activity tolerance for max/min branches.
    :param act_tol: Activity tolerance for feasible-set constraints.
    :param qp_tol: Duality-gap certificate tolerance for min-norm problems.
    :param max_iter: Iteration limit for min-norm problems.
    :param gamma_tol: Residual threshold for membership in Gamma(f, Omega).
    :param crit_tol: Rabier threshold for critical points.
    :param tau_abs: Acceptance threshold for the Palais-Smale statistics.
    :param ps_exponent: Shell decay exponent, tau_k = tau_abs / R_k**ps_exponent.
    :param cluster_radius: Clustering radius in objective space.
    :param divergence_threshold: Running-minimum bound for section probes.
    :param bound_cap: Image-norm bound for properness probes, None
        selects 10 * (1 + |finite part of ybar|).
    :param norm_floor: Minimum image norm used for recession directions.
    :param direction_tol: Sign tolerance for recession witnesses.
    :param sublevel_tol: Additive slack for sublevel membership.
    :param descent_steps: Step limit for local descents.
    :param descent_starts: Number of descent starts per shell.
    :param min_support_shells: Distinct shells needed to support a candidate.
    """
    tie_tol: float = 1e-9
    act_tol: float = 1e-9
    qp_tol: float = 1e-10
    max_iter: int = 10000
    gamma_tol: float = 1e-6
    crit_tol: float = 1e-6
    tau_abs: float = 1e-3
    ps_exponent: float = 0.0
    cluster_radius: float = 1e-2
    divergence_threshold: float = 1e6
    bound_cap: float = None
    norm_floor: float = 10.0
    direction_tol: float = 1e-3
    sublevel_tol: float = 1e-9
    descent_steps: int = 200
    descent_starts: int = 8
    min_support_shells: int = 3

    def replace(self, **kwargs):
        """Get a copy with some thresholds changed.

        :param kwargs: The threshold names and their new values.  None values
            keep the current setting.
        :return: The new :class:`Thresholds` instance.
        """
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return dataclasses.replace(self, **kwargs)

    def to_dict(self):
        return dataclasses.asdict(self)


DEFAULT = Thresholds()


def default_threads():
    """Get the default worker count.

    :return: The value of the PYVECOPT_THREADS environment variable when set,
        otherwise the number of physical cores.
    """
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            log.warning('Invalid %s value: %s', THREADS_ENV, value)
    return psutil.cpu_count(logical=False) or 1
