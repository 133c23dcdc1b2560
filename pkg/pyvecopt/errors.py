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

"""Exceptions raised by pyvecopt.

The command-line runner maps these onto exit codes:
:class:`InputError` and :class:`PreconditionError` exit with 1,
everything else derived from :class:`VecOptError` exits with 2.
"""


class VecOptError(Exception):
    """Base class for all pyvecopt errors."""


class InputError(VecOptError, ValueError):
    """Invalid input: dimension mismatch or an invalid construction."""


class ParseError(InputError):
    """Problem-file or expression syntax error.

    :param msg: The error description.
    :param line: The 1-based line number.
    :param column: The 1-based column number.
    """

    def __init__(self, msg, line=1, column=1):
        self.msg = msg
        self.line = int(line)
        self.column = int(column)
        super().__init__(f'{msg} (line {self.line}, column {self.column})')


class GridSizeError(InputError):
    """A brute-force grid exceeds its size guard."""


class PreconditionError(VecOptError):
    """An operation precondition does not hold."""


class InfeasiblePointError(PreconditionError):
    """The point lies outside the feasible set."""


class ParetoViolationError(PreconditionError):
    """The reference point is dominated by a sample.

    :param msg: The error description.
    :param witness: The dominating sample point.
    """

    def __init__(self, msg, witness=None):
        self.witness = witness
        super().__init__(msg)


class HypothesisError(PreconditionError):
    """The bounded-section hypothesis of the cross-check failed.

    :param msg: The error description.
    :param verdict: The failing bounded-section :class:`Verdict`.
    """

    def __init__(self, msg, verdict=None):
        self.verdict = verdict
        super().__init__(msg)


class DegenerateConstraintError(VecOptError):
    """Active smooth-constraint gradients are linearly dependent."""


class NumericalError(VecOptError):
    """A numerical method failed to converge.

    :param msg: The error description.
    :param best: The best iterate found before giving up.
    """

    def __init__(self, msg, best=None):
        self.best = best
        super().__init__(msg)


class SearchFailureError(NumericalError):
    """Every start of a multi-start search diverged."""


class InfeasibleProblemError(VecOptError):
    """The sublevel set is empty inside the search box."""
