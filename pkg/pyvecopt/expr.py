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

"""Expression trees for objective and constraint functions.

The primitive set is {+, *, neg, integer power, sin, cos, exp, abs, max, min}.
Every expression is locally Lipschitz and finite at every finite point.
Nodes are immutable and compare structurally.
"""

import dataclasses
import math
import numbers
import numpy as np
from .errors import InputError


def _as_expr(value):
    if isinstance(value, Expression):
        return value
    if isinstance(value, numbers.Real):
        return Constant(float(value))
    raise InputError(f'Cannot convert {value!r} to an expression')


class Expression:
    """Base class for all expression nodes."""

    children = ()

    def evaluate(self, x):
        """Evaluate at a single point.

        :param x: The point as a sequence of n floats.
        :return: The float value.
        """
        raise NotImplementedError()

    def evaluate_array(self, x):
        """Evaluate at many points.

        :param x: The (N, n) array of points.
        :return: The (N,) array of values.
        """
        raise NotImplementedError()

    def max_variable(self):
        """Get the largest variable index in the tree, -1 when none."""
        return max([c.max_variable() for c in self.children], default=-1)

    def is_smooth(self):
        """Check for the absence of abs, max and min nodes."""
        return all(c.is_smooth() for c in self.children)

    def canonical(self):
        """Rewrite abs(u) as max(u, -u) throughout the tree."""
        return self

    def walk(self):
        """Iterate over every node in depth-first pre-order."""
        yield self
        for c in self.children:
            yield from c.walk()

    def __add__(self, other):
        return Add((self, _as_expr(other)))

    def __radd__(self, other):
        return Add((_as_expr(other), self))

    def __sub__(self, other):
        return Add((self, Neg(_as_expr(other))))

    def __rsub__(self, other):
        return Add((_as_expr(other), Neg(self)))

    def __mul__(self, other):
        return Mul((self, _as_expr(other)))

    def __rmul__(self, other):
        return Mul((_as_expr(other), self))

    def __neg__(self):
        return Neg(self)

    def __pow__(self, exponent):
        return IntPow(self, exponent)


@dataclasses.dataclass(frozen=True)
class Constant(Expression):
    value: float

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, numbers.Real):
            raise InputError(f'Constant must be real: {self.value!r}')
        if not math.isfinite(self.value):
            raise InputError(f'Constant must be finite: {self.value!r}')
        object.__setattr__(self, 'value', float(self.value))

    def evaluate(self, x):
        return self.value

    def evaluate_array(self, x):
        return np.full(len(x), self.value)


@dataclasses.dataclass(frozen=True)
class Variable(Expression):
    index: int

    def __post_init__(self):
        if isinstance(self.index, bool) or not isinstance(self.index, numbers.Integral) or self.index < 0:
            raise InputError(f'Variable index must be a nonnegative integer: {self.index!r}')
        object.__setattr__(self, 'index', int(self.index))

    def evaluate(self, x):
        return float(x[self.index])

    def evaluate_array(self, x):
        return np.asarray(x[:, self.index], dtype=float)

    def max_variable(self):
        return self.index


class _Nary(Expression):

    _min_children = 1

    def __post_init__(self):
        children = tuple(_as_expr(c) for c in self.children)
        if len(children) < self._min_children:
            raise InputError(f'{type(self).__name__} requires at least {self._min_children} children')
        object.__setattr__(self, 'children', children)

    def canonical(self):
        return type(self)(tuple(c.canonical() for c in self.children))


@dataclasses.dataclass(frozen=True)
class Add(_Nary):
    children: tuple

    def evaluate(self, x):
        return math.fsum(c.evaluate(x) for c in self.children)

    def evaluate_array(self, x):
        return np.sum([c.evaluate_array(x) for c in self.children], axis=0)


@dataclasses.dataclass(frozen=True)
class Mul(_Nary):
    children: tuple

    def evaluate(self, x):
        y = 1.0
        for c in self.children:
            y *= c.evaluate(x)
        return y

    def evaluate_array(self, x):
        return np.prod([c.evaluate_array(x) for c in self.children], axis=0)


@dataclasses.dataclass(frozen=True)
class Max(_Nary):
    children: tuple
    _min_children = 2

    def evaluate(self, x):
        return max(c.evaluate(x) for c in self.children)

    def evaluate_array(self, x):
        return np.max([c.evaluate_array(x) for c in self.children], axis=0)

    def is_smooth(self):
        return False


@dataclasses.dataclass(frozen=True)
class Min(_Nary):
    children: tuple
    _min_children = 2

    def evaluate(self, x):
        return min(c.evaluate(x) for c in self.children)

    def evaluate_array(self, x):
        return np.min([c.evaluate_array(x) for c in self.children], axis=0)

    def is_smooth(self):
        return False


class _Unary(Expression):

    def __post_init__(self):
        object.__setattr__(self, 'child', _as_expr(self.child))

    @property
    def children(self):
        return (self.child,)

    def canonical(self):
        return type(self)(self.child.canonical())


@dataclasses.dataclass(frozen=True)
class Neg(_Unary):
    child: Expression

    def evaluate(self, x):
        return -self.child.evaluate(x)

    def evaluate_array(self, x):
        return -self.child.evaluate_array(x)


@dataclasses.dataclass(frozen=True)
class Sin(_Unary):
    child: Expression

    def evaluate(self, x):
        return math.sin(self.child.evaluate(x))

    def evaluate_array(self, x):
        return np.sin(self.child.evaluate_array(x))


@dataclasses.dataclass(frozen=True)
class Cos(_Unary):
    child: Expression

    def evaluate(self, x):
        return math.cos(self.child.evaluate(x))

    def evaluate_array(self, x):
        return np.cos(self.child.evaluate_array(x))


@dataclasses.dataclass(frozen=True)
class Exp(_Unary):
    child: Expression

    def evaluate(self, x):
        try:
            return math.exp(self.child.evaluate(x))
        except OverflowError:
            return math.inf

    def evaluate_array(self, x):
        with np.errstate(over='ignore'):
            return np.exp(self.child.evaluate_array(x))


@dataclasses.dataclass(frozen=True)
class Abs(_Unary):
    child: Expression

    def evaluate(self, x):
        return abs(self.child.evaluate(x))

    def evaluate_array(self, x):
        return np.abs(self.child.evaluate_array(x))

    def is_smooth(self):
        return False

    def canonical(self):
        u = self.child.canonical()
        return Max((u, Neg(u)))


@dataclasses.dataclass(frozen=True)
class IntPow(Expression):
    child: Expression
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, 'child', _as_expr(self.child))
        k = self.exponent
        if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 0:
            raise InputError(f'IntPow exponent must be a nonnegative integer: {k!r}')
        object.__setattr__(self, 'exponent', int(k))

    @property
    def children(self):
        return (self.child,)

    def evaluate(self, x):
        u = self.child.evaluate(x)
        try:
            return u ** self.exponent
        except OverflowError:
            return math.copysign(math.inf, u) if self.exponent % 2 else math.inf

    def evaluate_array(self, x):
        with np.errstate(over='ignore'):
            return np.power(self.child.evaluate_array(x), self.exponent)

    def canonical(self):
        return IntPow(self.child.canonical(), self.exponent)


def variables(n):
    """Get the variables x_0, ..., x_{n-1}.

    :param n: The input dimension.
    :return: The tuple of :class:`Variable` nodes.
    """
    return tuple(Variable(i) for i in range(n))
