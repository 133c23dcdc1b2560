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
from pyvecopt.asymptotics import k_zero_cloud


def parser_config(p):
    """Find the critical values inside a search box."""
    cli.add_common_args(p, seed=False)
    p.add_argument('--ybar', default='inf',
                   help='The sublevel vector "y1,...,ym", entries may be inf, or "inf" for all.')
    p.add_argument('--box', required=True, metavar='LO1,HI1,...',
                   help='The finite search box.')
    p.add_argument('--grid', type=int, default=11,
                   help='The seed count per dimension.')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    ybar = cli.parse_ybar(args.ybar, problem.m)
    box = cli.parse_box(args.box, problem.n)
    cloud = k_zero_cloud(problem, ybar, box, args.grid, args.mode, thresholds, args.threads)
    cli.emit(args, problem, cloud, stopwatch, thresholds)
