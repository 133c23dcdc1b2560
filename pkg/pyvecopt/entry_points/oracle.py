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
from pyvecopt.oracle import GridSpec, grid_pareto


def parser_config(p):
    """Compute the ground-truth nondominated grid points."""
    p.add_argument('action', choices=['pareto-grid'],
                   help='The oracle to run.')
    cli.add_common_args(p, seed=False, mode=False)
    p.add_argument('--box', required=True, metavar='LO1,HI1,...',
                   help='The finite grid box.')
    p.add_argument('--grid-step', type=float, required=True,
                   help='The grid spacing.')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    grid = GridSpec.from_step(cli.parse_box(args.box, problem.n), args.grid_step)
    x, images = grid_pareto(problem, grid, thresholds.act_tol)
    result = {
        'grid': {'lower': grid.lower, 'upper': grid.upper, 'steps': grid.steps},
        'count': len(x),
        'points': [{'x': xi, 'f': fi} for xi, fi in zip(x.tolist(), images.tolist())],
    }
    cli.emit(args, problem, result, stopwatch, thresholds)
