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
from pyvecopt.efficiency import recession_probe


def parser_config(p):
    """Estimate the recession directions of the image set."""
    cli.add_common_args(p, mode=False)
    cli.add_radii_args(p)
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    schedule = cli.parse_radii(args.radii)
    r = recession_probe(problem, schedule, args.seed, thresholds, args.threads)
    cli.emit(args, problem, r, stopwatch, thresholds)
