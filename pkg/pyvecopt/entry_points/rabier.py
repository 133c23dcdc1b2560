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
from pyvecopt.minnorm import rabier, stationarity_gap
from pyvecopt.problem import as_point


def parser_config(p):
    """Compute the Rabier stationarity measure at a point."""
    cli.add_common_args(p, seed=False)
    p.add_argument('--at', required=True, metavar='X1,...,XN',
                   help='The feasible point.')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    x = as_point(cli.parse_vector(args.at, problem.n, 'point'), problem.n)
    r = rabier(problem, x, args.mode, thresholds)
    _, critical = stationarity_gap(problem, x, args.mode, thresholds)
    result = {
        'x': x.tolist(),
        'f': problem.evaluate(x).tolist(),
        'nu': r.value,
        'critical': critical,
        'signs': list(r.signs),
        'lambdas': r.lambdas.tolist(),
        'min_norm': r.result.to_dict(),
    }
    cli.emit(args, problem, result, stopwatch, thresholds)
