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

"""Shared command-line argument handling for the entry points."""

import dataclasses
import functools
import logging
import math
import os
import sys
from . import config, examples, report
from .asymptotics import DEFAULT_SCHEDULE, RadiusSchedule
from .errors import InputError, PreconditionError, VecOptError
from .minnorm import RabierMode
from .parser import parse_problem
from .problem import SublevelBound
from .time import Stopwatch


log = logging.getLogger(__name__)
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


def load_problem(source):
    """Load a problem from a bundled example name or a problem-file path."""
    if source in examples.SOURCES:
        return examples.get(source)
    if not os.path.isfile(source):
        raise InputError(f'no such problem file or example: {source!r} (examples: {", ".join(examples.names())})')
    with open(source, 'rt', encoding='utf-8') as f:
        return parse_problem(f.read())


def _value(text):
    text = text.strip().lower()
    if text in ('inf', '+inf'):
        return math.inf
    if text == '-inf':
        return -math.inf
    try:
        return float(text)
    except ValueError:
        raise InputError(f'invalid number {text!r}')


def parse_vector(text, size=None, name='vector'):
    """Parse a comma-separated list of floats, allowing inf."""
    values = tuple(_value(v) for v in str(text).split(',') if v.strip())
    if not values:
        raise InputError(f'empty {name}')
    if size is not None and len(values) != size:
        raise InputError(f'{name} needs {size} entries, got {len(values)}')
    return values


def parse_ybar(text, m):
    """Parse the sublevel vector, where a lone "inf" means all +inf."""
    if text is None or str(text).strip().lower() == 'inf':
        return SublevelBound.unrestricted(m)
    return SublevelBound(parse_vector(text, m, 'ybar'))


def parse_box(text, n):
    """Parse "lo1,hi1,lo2,hi2,..." into (lo, hi) pairs."""
    values = parse_vector(text, 2 * n, 'box')
    return [(values[2 * i], values[2 * i + 1]) for i in range(n)]


def parse_radii(text):
    """Parse "R0,rho,K" into a geometric :class:`RadiusSchedule`."""
    if text is None:
        return DEFAULT_SCHEDULE
    values = parse_vector(text, 3, 'radii')
    if not float(values[2]).is_integer():
        raise InputError('radii shell count K must be an integer')
    return RadiusSchedule.geometric(values[0], values[1], int(values[2]))


def parse_thresholds(items):
    """Apply NAME=VALUE overrides to the default thresholds."""
    fields = {f.name: f for f in dataclasses.fields(config.Thresholds)}
    values = {}
    for item in items or []:
        name, sep, value = item.partition('=')
        name = name.strip().replace('-', '_')
        if not sep or name not in fields:
            raise InputError(f'invalid threshold {item!r}, choose from {", ".join(fields)}')
        v = _value(value)
        values[name] = int(v) if fields[name].type in (int, 'int') else v
    return config.DEFAULT.replace(**values)


def add_problem_args(p):
    p.add_argument('--problem', required=True,
                   help=f'The problem file path or one of the bundled examples: {", ".join(examples.names())}.')


def add_common_args(p, seed=True, mode=True):
    """Add the flags shared by the analysis commands."""
    add_problem_args(p)
    if seed:
        p.add_argument('--seed', type=int, default=0,
                       help='The random seed.')
    if mode:
        p.add_argument('--mode', default=RabierMode.FULL.value,
                       choices=[m.value for m in RabierMode],
                       help='The sign patterns of the stationarity measure.')
    p.add_argument('--threads', type=int,
                   help=f'The worker count, default from {config.THREADS_ENV} or the physical core count.')
    p.add_argument('--set', dest='thresholds', action='append', metavar='NAME=VALUE',
                   help='Override one threshold, may be repeated.')
    p.add_argument('--full', action='store_true',
                   help='Keep complete witness tables.')
    p.add_argument('--out',
                   help='The report output path, default stdout.')


def add_radii_args(p):
    p.add_argument('--radii', metavar='R0,RHO,K',
                   help='The geometric shell radii R0 * RHO**k for k = 0..K.')


def command_echo(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ('func', 'out') and not callable(v)}


def emit(args, problem, result, stopwatch, thresholds=None):
    """Write the report for a command."""
    doc = report.build(command_echo(args), problem, result,
                       seed=getattr(args, 'seed', None),
                       thresholds=thresholds,
                       mode=getattr(args, 'mode', None),
                       stopwatch=stopwatch,
                       full=getattr(args, 'full', False))
    text = report.dumps(doc)
    if getattr(args, 'out', None):
        with open(args.out, 'wt', encoding='utf-8') as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return doc


def command(fn):
    """Wrap an on_cmd(args, stopwatch) function with the exit-code mapping.

    Verdicts, including failing ones, exit with 0.  Input and
    precondition errors exit with 1, numerical failures with 2.
    """

    @functools.wraps(fn)
    def on_cmd(args):
        stopwatch = Stopwatch()
        try:
            fn(args, stopwatch)
        except (InputError, PreconditionError, OSError) as ex:
            print(f'error: {ex}', file=sys.stderr)
            return EXIT_USAGE
        except (VecOptError, OverflowError) as ex:
            log.warning('numerical failure: %s', ex)
            print(f'error: {ex}', file=sys.stderr)
            return EXIT_NUMERICAL
        return EXIT_OK

    return on_cmd
