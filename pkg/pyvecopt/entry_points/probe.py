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
from pyvecopt.asymptotics import (bounded_section_probe, mtame_probe, properness_probe, ps_probe,
                                  weak_ps_probe)


_CLOUDS = {
    'ps': ps_probe,
    'weak-ps': weak_ps_probe,
    'mtame': mtame_probe,
}
_VERDICTS = {
    'proper': properness_probe,
    'section': bounded_section_probe,
}


def parser_config(p):
    """Run one asymptotic probe over the radius shells."""
    p.add_argument('kind', choices=list(_VERDICTS) + list(_CLOUDS),
                   help='The probe to run.')
    cli.add_common_args(p)
    cli.add_radii_args(p)
    p.add_argument('--ybar', default='inf',
                   help='The sublevel vector "y1,...,ym", entries may be inf, or "inf" for all.')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    problem = cli.load_problem(args.problem)
    thresholds = cli.parse_thresholds(args.thresholds)
    ybar = cli.parse_ybar(args.ybar, problem.m)
    schedule = cli.parse_radii(args.radii)
    if args.kind in _CLOUDS:
        result = _CLOUDS[args.kind](problem, ybar, schedule, args.mode, args.seed, thresholds, args.threads)
    else:
        result = _VERDICTS[args.kind](problem, ybar, schedule, args.seed, thresholds, args.threads)
    cli.emit(args, problem, result, stopwatch, thresholds)
