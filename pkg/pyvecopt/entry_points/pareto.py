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
from pyvecopt.efficiency import (ScalarizationConfig, pareto_existence_report, pareto_front,
                                 scalarize_solve, weight_grid)


def parser_config(p):
    """Solve for Pareto points by weighted-sum scalarization."""
    p.add_argument('action', choices=['solve', 'front', 'exist'],
                   help='solve one scalarization, sweep a weight grid, or check existence.')
    cli.add_common_args(p)
    cli.add_radii_args(p)
    p.add_argument('--ybar', default='inf',
                   help='The sublevel vector "y1,...,ym", entries may be inf, or "inf" for all.')
    p.add_argument('--box', required=True, metavar='LO1,HI1,...',
                   help='The finite search box.')
    p.add_argument('--lambda', dest='weights', metavar='L1,...,LM',
                   help='The strictly positive weights for solve, default all equal.')
    p.add_argument('--lambda-grid', type=int, default=4, metavar='N',
                   help='The weight denominator for front.')
    p.add_argument('--starts', type=int, default=64,
                   help='The number of multi-start points.')
    p.add_argument('--grid-step', type=float,
                   help='The verification grid spacing.')
    p.add_argument('--grid', type=int, default=11,
                   help='The critical-value seed count per dimension for exist.')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    ybar = cli.parse_ybar(args.ybar, problem.m)
    box = cli.parse_box(args.box, problem.n)
    if args.action == 'exist':
        schedule = cli.parse_radii(args.radii)
        result = pareto_existence_report(problem, ybar, box, schedule, args.mode, args.seed, args.grid,
                                         thresholds, args.threads)
        cli.emit(args, problem, result, stopwatch, thresholds)
        return
    weights = (1.0 / problem.m,) * problem.m
    if args.weights is not None:
        weights = cli.parse_vector(args.weights, problem.m, 'lambda')
    cfg = ScalarizationConfig(weights, ybar, box, starts=args.starts, seed=args.seed, grid_step=args.grid_step)
    if args.action == 'solve':
        result = scalarize_solve(problem, cfg, thresholds, args.threads)
    else:
        grid = weight_grid(problem.m, args.lambda_grid)
        result = pareto_front(problem, ybar, grid, cfg, thresholds, args.threads)
    cli.emit(args, problem, result, stopwatch, thresholds)
