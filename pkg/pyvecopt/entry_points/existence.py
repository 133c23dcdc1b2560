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
from pyvecopt.efficiency import geoffrion_existence_report


def parser_config(p):
    """Collect evidence on Geoffrion-properly efficient solutions."""
    cli.add_common_args(p)
    cli.add_radii_args(p)
    p.add_argument('--box', metavar='LO1,HI1,...',
                   help='The search box for a scalarized candidate, skipped when omitted.')
    p.add_argument('--lambda', dest='weights', metavar='L1,...,LM',
                   help='The candidate scalarization weights, default all equal.')
    p.add_argument('--M', dest='M', type=float, default=1e3,
                   help='The trade-off bound checked at the candidate.')
    p.add_argument('--crosscheck', action='store_true',
                   help='Also run the four-condition cross-check at each sublevel.')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    schedule = cli.parse_radii(args.radii)
    box = None if args.box is None else cli.parse_box(args.box, problem.n)
    weights = None if args.weights is None else cli.parse_vector(args.weights, problem.m, 'lambda')
    r = geoffrion_existence_report(problem, schedule, args.mode, args.seed, thresholds, args.threads,
                                   box=box, weights=weights, M=args.M, crosscheck=args.crosscheck)
    cli.emit(args, problem, r, stopwatch, thresholds)
