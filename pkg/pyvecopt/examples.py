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

"""Bundled example problems, addressable by name from the command line."""

from .errors import InputError
from .parser import parse_problem


SOURCES = {
    # x^2 on R, proper with a unique minimizer
    'quadratic': 'n: 1\nm: 1\nobjectives: ["x1^2"]\nconstraints: full\n',
    # sin x on R: 0 is an asymptotic value of the Gamma set but not a ps value
    'sin': 'n: 1\nm: 1\nobjectives: ["sin(x1)"]\nconstraints: full\n',
    # (-x^2, x) on [0, inf): every point is Pareto, none is Geoffrion-proper
    'ex41': 'n: 1\nm: 2\nobjectives: ["-x1^2", "x1"]\nconstraints: box [[0, inf]]\n',
    # x1 + x2 on R^2: improper, with empty asymptotic sets
    'linear2': 'n: 2\nm: 1\nobjectives: ["x1 + x2"]\nconstraints: full\n',
    # (x, x^2) on R: Geoffrion-proper solutions without boundedness from below
    'remark41': 'n: 1\nm: 2\nobjectives: ["x1", "x1^2"]\nconstraints: full\n',
    'identity': 'n: 1\nm: 1\nobjectives: ["x1"]\nconstraints: full\n',
}


def names():
    return sorted(SOURCES.keys())


def get(name):
    """Get a bundled problem by name.

    :param name: One of :func:`names`.
    :return: The :class:`Problem`.
    :raise InputError: For an unknown name.
    """
    try:
        return parse_problem(SOURCES[name])
    except KeyError:
        raise InputError(f'unknown example {name!r}, choose from {", ".join(names())}')
