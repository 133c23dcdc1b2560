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

import sys
from pyvecopt import cli, report


def parser_config(p):
    """Re-evaluate every witness row of a saved report."""
    p.add_argument('report',
                   help='The report file path.')
    p.add_argument('--tol', type=float, default=report.REPLAY_TOL,
                   help='The relative replay tolerance.')
    return on_cmd


@cli.command
def on_cmd(args, stopwatch):
    with open(args.report, 'rt', encoding='utf-8') as f:
        doc = report.loads(f.read())
    r = report.replay(doc, args.tol)
    sys.stdout.write(report.dumps(report.sanitize(r)))
