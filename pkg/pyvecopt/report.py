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

"""Machine-readable JSON reports and witness replay.

Non-finite floats are stored as the strings "inf", "-inf" and "nan".
Everything except the "timing" section is deterministic for fixed
inputs and seed.
"""

import collections
import dataclasses
import enum
import hashlib
import json
import logging
import math
import numpy as np
from . import config
from .errors import InputError
from .minnorm import RabierMode, gamma_residual, rabier_nu
from .parser import parse_problem, render
from .version import __version__


log = logging.getLogger(__name__)
WITNESS_ROWS = 50
REPLAY_TOL = 1e-10


def problem_digest(problem):
    """Get the sha256 hex digest of the rendered problem."""
    return hashlib.sha256(render(problem).encode('utf-8')).hexdigest()


def _float(v):
    if math.isnan(v):
        return 'nan'
    if math.isinf(v):
        return 'inf' if v > 0 else '-inf'
    return v


def sanitize(obj):
    """Convert an object tree to JSON-compatible values."""
    if hasattr(obj, 'to_dict'):
        return sanitize(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    return obj


def cap_witness(obj, rows=WITNESS_ROWS):
    """Limit every witness table to the first rows entries per shell.

    Truncated tables gain a sibling "witness_omitted" count.
    """
    if isinstance(obj, list):
        return [cap_witness(v, rows) for v in obj]
    if not isinstance(obj, dict):
        return obj
    result = {}
    for key, value in obj.items():
        if key == 'witness' and isinstance(value, list):
            counts = collections.Counter()
            kept = []
            for row in value:
                shell = row.get('shell') if isinstance(row, dict) else None
                counts[shell] += 1
                if counts[shell] <= rows:
                    kept.append(cap_witness(row, rows))
            result[key] = kept
            if len(kept) < len(value):
                result['witness_omitted'] = len(value) - len(kept)
        else:
            result[key] = cap_witness(value, rows)
    return result


def build(command, problem, result, seed=None, thresholds=None, mode=None, stopwatch=None, full=False):
    """Assemble a report document.

    :param command: The command echo, a dict of the invocation arguments.
    :param problem: The :class:`Problem`.
    :param result: The result object with to_dict() or a plain dict.
    :param seed: The random seed, if any.
    :param thresholds: The :class:`Thresholds` used.
    :param mode: The :class:`RabierMode` used for nu and Gamma.
    :param stopwatch: The :class:`Stopwatch` to fill the timing section.
    :param full: Keep complete witness tables.
    :return: The JSON-compatible report dict.
    """
    thresholds = config.DEFAULT if thresholds is None else thresholds
    doc = {
        'version': __version__,
        'command': sanitize(command),
        'problem': {
            'digest': problem_digest(problem),
            'n': problem.n,
            'm': problem.m,
            'text': render(problem),
        },
        'seed': seed,
        'mode': None if mode is None else RabierMode.parse(mode).value,
        'thresholds': sanitize(thresholds.to_dict()),
        'result': sanitize(result),
    }
    if not full:
        doc['result'] = cap_witness(doc['result'])
    if stopwatch is not None:
        doc['timing'] = stopwatch.to_dict()
    return doc


def dumps(doc):
    return json.dumps(doc, indent=2, allow_nan=False) + '\n'


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise InputError(f'invalid report: {ex.msg} (line {ex.lineno}, column {ex.colno})')


def _floats(values):
    return np.array([float(v) for v in values], dtype=float)


def _rows(obj, path='result'):
    """Yield (path, row) for every witness row with 'x' and 'f'."""
    if isinstance(obj, dict):
        if 'x' in obj and 'f' in obj and isinstance(obj['x'], list) and isinstance(obj['f'], list):
            yield path, obj
        for key, value in obj.items():
            yield from _rows(value, f'{path}.{key}')
    elif isinstance(obj, list):
        for i, value in enumerate(obj):
            yield from _rows(value, f'{path}[{i}]')


def _close(expected, actual, tol):
    return abs(actual - expected) <= tol * max(1.0, abs(expected))


@dataclasses.dataclass(frozen=True)
class ReplayReport:
    """The outcome of replaying a report.

    :var checked: The number of witness rows re-evaluated.
    :var mismatches: The tuple of dicts with path, field, recorded and
        recomputed values.
    """
    checked: int
    mismatches: tuple = ()

    @property
    def ok(self):
        return not self.mismatches

    def to_dict(self):
        return {'checked': self.checked, 'ok': self.ok, 'mismatches': list(self.mismatches)}


def replay(doc, tol=REPLAY_TOL):
    """Re-evaluate every witness row of a report.

    The problem is rebuilt from the embedded text and checked against the
    recorded digest.  Each row's f, and nu or Gamma residual when
    recorded, must match within tol relative to max(1, |value|).

    :param doc: The report dict from :func:`loads`.
    :param tol: The replay tolerance.
    :return: The :class:`ReplayReport`.
    :raise InputError: On a malformed report or digest mismatch.
    """
    try:
        section = doc['problem']
        problem = parse_problem(section['text'])
        result = doc['result']
    except (KeyError, TypeError):
        raise InputError('report lacks the problem or result section')
    if problem_digest(problem) != section.get('digest'):
        raise InputError('problem digest mismatch')
    mode = RabierMode.parse(doc.get('mode') or RabierMode.FULL)
    thresholds = config.DEFAULT
    if isinstance(doc.get('thresholds'), dict):
        fields = {f.name for f in dataclasses.fields(config.Thresholds)}
        values = {k: v for k, v in doc['thresholds'].items() if k in fields}
        thresholds = dataclasses.replace(config.DEFAULT, **values)
    mismatches = []
    checked = 0
    for path, row in _rows(result):
        x = _floats(row['x'])
        if len(x) != problem.n:
            continue
        checked += 1
        recomputed = {'f': problem.evaluate(x)}
        if row.get('nu') is not None:
            recomputed['nu'] = rabier_nu(problem, x, mode, thresholds=thresholds)
        if row.get('gamma') is not None:
            recomputed['gamma'] = gamma_residual(problem, x, mode, thresholds=thresholds)
        for field, actual in recomputed.items():
            expected = _floats(np.atleast_1d(row[field]))
            actual = np.atleast_1d(actual)
            if len(expected) != len(actual) or not all(_close(e, a, tol) for e, a in zip(expected, actual)):
                mismatches.append({
                    'path': path,
                    'field': field,
                    'recorded': sanitize(expected),
                    'recomputed': sanitize(actual),
                })
    if mismatches:
        log.warning('replay: %d of %d rows mismatch', len(mismatches), checked)
    else:
        log.info('replay: %d rows match', checked)
    return ReplayReport(checked, tuple(mismatches))
