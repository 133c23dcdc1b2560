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
from pyvecopt.asymptotics import theorem31_crosscheck


def parser_config(p):
    """Compare properness with the three asymptotic conditions."""
    cli.add_common_args(p)
    cli.add_radii_args(p)
    p.add_argument('--ybar', required=True,
                   help='The finite sublevel vector "y1,...,ym".')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    ybar = cli.parse_ybar(args.ybar, problem.m)
    schedule = cli.parse_radii(args.radii)
    r = theorem31_crosscheck(problem, ybar, schedule, args.mode, args.seed, thresholds, args.threads)
    cli.emit(args, problem, r, stopwatch, thresholds)
