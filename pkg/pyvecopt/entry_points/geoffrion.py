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

from pyvecopt import cli
from pyvecopt.asymptotics import as_box
from pyvecopt.efficiency import geoffrion_check, oracle_grid
from pyvecopt.oracle import feasible_grid
from pyvecopt.problem import as_point


def parser_config(p):
    """Check the Geoffrion trade-off bound at a point against a grid."""
    cli.add_common_args(p, seed=False, mode=False)
    p.add_argument('--xbar', required=True, metavar='X1,...,XN',
                   help='The candidate point.')
    p.add_argument('--M', dest='M', type=float, required=True,
                   help='The positive trade-off bound.')
    p.add_argument('--box', required=True, metavar='LO1,HI1,...',
                   help='The finite sample box.')
    p.add_argument('--grid-step', type=float,
                   help='The sample grid spacing.')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    xbar = as_point(cli.parse_vector(args.xbar, problem.n, 'xbar'), problem.n)
    box = as_box(cli.parse_box(args.box, problem.n), problem.n)
    samples, _ = feasible_grid(problem, oracle_grid(box, args.grid_step), thresholds.act_tol)
    r = geoffrion_check(problem, xbar, args.M, samples)
    cli.emit(args, problem, r, stopwatch, thresholds)
