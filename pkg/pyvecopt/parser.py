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

"""Problem-file and expression parsing.

A problem file holds ``key: value`` entries separated by newlines or
commas, with ``#`` comments::

    n: 1
    m: 2
    objectives: ["-x1^2", "x1"]
    constraints: box [[0, inf]]

The constraints are ``full``, ``box [[lo, hi], ...]``,
``polyhedron ["a.x <= b", ...]`` with affine rows or
``smooth ["g(x) <= 0", ...]``.  Objective strings use the grammar::

    sum     := term { ('+' | '-') term }
    term    := unary { '*' unary }
    unary   := '-' unary | power
    power   := atom [ '^' integer ]
    atom    := number | 'x' index | name '(' sum { ',' sum } ')' | '(' sum ')'

with the functions sin, cos, exp, abs, max and min.  A minus sign
directly before a number literal folds into a negative constant.
"""

import logging
import math
import re
import numpy as np
from .errors import ParseError
from .expr import Abs, Add, Constant, Cos, Exp, IntPow, Max, Min, Mul, Neg, Sin, Variable
from .problem import Box, FullSpace, Polyhedron, Problem, SmoothIneq


log = logging.getLogger(__name__)

_TOKENS = [
    ('NUMBER', r'(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?'),
    ('IDENT', r'[A-Za-z_][A-Za-z_0-9]*'),
    ('STRING', r'"[^"\n]*"'),
    ('LE', r'<='),
    ('PLUS', r'\+'),
    ('MINUS', r'-'),
    ('STAR', r'\*'),
    ('CARET', r'\^'),
    ('LPAREN', r'\('),
    ('RPAREN', r'\)'),
    ('LBRACK', r'\['),
    ('RBRACK', r'\]'),
    ('COMMA', r','),
    ('COLON', r':'),
    ('NEWLINE', r'\n'),
    ('SKIP', r'[ \t\r]+'),
    ('COMMENT', r'#[^\n]*'),
    ('MISMATCH', r'.'),
]
_PATTERN = re.compile('|'.join(f'(?P<{name}>{regex})' for name, regex in _TOKENS))
_FUNCTIONS = {
    'sin': (Sin, 1),
    'cos': (Cos, 1),
    'exp': (Exp, 1),
    'abs': (Abs, 1),
    'max': (Max, 2),
    'min': (Min, 2),
}
_VARIABLE = re.compile(r'x([1-9]\d*)')
_FIELDS = ('n', 'm', 'objectives', 'constraints')


class _Token:

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f'{self.kind}({self.text!r}) at {self.line}:{self.column}'


def _lex(text, line=1, column=1):
    """Split text into tokens, dropping whitespace and comments."""
    tokens = []
    line_start = 1 - column
    for match in _PATTERN.finditer(text):
        kind = match.lastgroup
        col = match.start() - line_start + 1
        if kind == 'NEWLINE':
            line += 1
            line_start = match.end()
            continue
        if kind in ('SKIP', 'COMMENT'):
            continue
        if kind == 'MISMATCH':
            raise ParseError(f'unexpected character {match.group()!r}', line, col)
        tokens.append(_Token(kind, match.group(), line, col))
    end_col = len(text) - line_start + 1
    tokens.append(_Token('END', '', line, end_col))
    return tokens


class _Scanner:

    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    @property
    def token(self):
        return self.tokens[self.index]

    def lookahead(self, offset=1):
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def peek(self, kind):
        return self.token.kind == kind

    def accept(self, kind):
        if self.peek(kind):
            token = self.token
            self.index += 1
            return token
        return None

    def expect(self, kind, what=None):
        token = self.accept(kind)
        if token is None:
            self.error(f'expected {what or kind.lower()}, found {self.describe()}')
        return token

    def describe(self):
        t = self.token
        return 'end of input' if t.kind == 'END' else repr(t.text)

    def error(self, msg, token=None):
        token = self.token if token is None else token
        raise ParseError(msg, token.line, token.column)


class _ExpressionParser:

    def __init__(self, scanner, n=None):
        self.s = scanner
        self.n = n

    def parse(self):
        expr = self._sum()
        if not self.s.peek('END'):
            self.s.error(f'unexpected {self.s.describe()}')
        return expr

    def _sum(self):
        terms = [self._term()]
        while self.s.peek('PLUS') or self.s.peek('MINUS'):
            if self.s.accept('PLUS'):
                terms.append(self._term())
            else:
                self.s.accept('MINUS')
                terms.append(Neg(self._term()))
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def _term(self):
        factors = [self._unary()]
        while self.s.accept('STAR'):
            factors.append(self._unary())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def _unary(self):
        if self.s.accept('MINUS'):
            if self.s.peek('NUMBER') and self.s.lookahead().kind != 'CARET':
                return Constant(-self._number(self.s.accept('NUMBER')))
            return Neg(self._unary())
        return self._power()

    def _power(self):
        base = self._atom()
        if self.s.accept('CARET'):
            if self.s.peek('MINUS'):
                self.s.error('exponent must be a nonnegative integer')
            token = self.s.expect('NUMBER', 'integer exponent')
            if not token.text.isdigit():
                self.s.error('exponent must be a nonnegative integer', token)
            base = IntPow(base, int(token.text))
            if self.s.peek('CARET'):
                self.s.error('chained powers require parentheses')
        return base

    def _number(self, token):
        value = float(token.text)
        if not math.isfinite(value):
            self.s.error(f'number out of range: {token.text}', token)
        return value

    def _atom(self):
        token = self.s.token
        if self.s.accept('NUMBER'):
            return Constant(self._number(token))
        if self.s.accept('LPAREN'):
            expr = self._sum()
            self.s.expect('RPAREN', "')'")
            return expr
        if self.s.accept('IDENT'):
            name = token.text
            if name in _FUNCTIONS:
                return self._call(token)
            match = _VARIABLE.fullmatch(name)
            if match is None:
                self.s.error(f'unknown identifier {name!r}', token)
            index = int(match.group(1))
            if self.n is not None and index > self.n:
                self.s.error(f'variable {name} exceeds n={self.n}', token)
            return Variable(index - 1)
        self.s.error(f'unexpected {self.s.describe()}')

    def _call(self, name):
        cls, min_args = _FUNCTIONS[name.text]
        self.s.expect('LPAREN', f"'(' after {name.text}")
        args = [self._sum()]
        while self.s.accept('COMMA'):
            args.append(self._sum())
        self.s.expect('RPAREN', "')'")
        if min_args == 1 and len(args) != 1:
            self.s.error(f'{name.text} takes exactly one argument, got {len(args)}', name)
        if len(args) < min_args:
            self.s.error(f'{name.text} takes at least {min_args} arguments, got {len(args)}', name)
        return cls(args[0]) if min_args == 1 else cls(tuple(args))


def parse_expression(text, n=None, line=1, column=1):
    """Parse one expression string.

    :param text: The expression source.
    :param n: The input dimension for the variable range check, None to skip.
    :param line: The line of the first character, for error positions.
    :param column: The column of the first character, for error positions.
    :return: The :class:`Expression`.
    :raise ParseError: On syntax, arity or unknown-identifier errors.
    """
    tokens = _lex(text, line, column)
    for token in tokens:
        if token.kind in ('STRING', 'LBRACK', 'RBRACK', 'COLON', 'LE'):
            raise ParseError(f'unexpected {token.text!r}', token.line, token.column)
    return _ExpressionParser(_Scanner(tokens), n).parse()


def _constraint(text, line, column):
    """Parse 'lhs <= rhs' into the expression lhs - rhs."""
    tokens = _lex(text, line, column)
    le = [i for i, t in enumerate(tokens) if t.kind == 'LE']
    if len(le) != 1:
        token = tokens[le[1]] if len(le) > 1 else tokens[-1]
        raise ParseError("constraint rows need exactly one '<='", token.line, token.column)
    k = le[0]
    end = tokens[k]
    lhs = _ExpressionParser(_Scanner(tokens[:k] + [_Token('END', '', end.line, end.column)])).parse()
    rhs = _ExpressionParser(_Scanner(tokens[k + 1:])).parse()
    if isinstance(rhs, Constant) and rhs.value == 0.0:
        return lhs
    return Add((lhs, Neg(rhs)))


def _affine(expr, n):
    """Get (a, c) with expr(x) = a.x + c, or None when expr is not affine."""
    zeros = np.zeros(n)
    if expr.max_variable() < 0:
        return zeros, expr.evaluate(zeros)
    if isinstance(expr, Variable):
        a = zeros.copy()
        a[expr.index] = 1.0
        return a, 0.0
    if isinstance(expr, Neg):
        r = _affine(expr.child, n)
        return None if r is None else (-r[0], -r[1])
    if isinstance(expr, Add):
        parts = [_affine(c, n) for c in expr.children]
        if any(p is None for p in parts):
            return None
        return sum(p[0] for p in parts), sum(p[1] for p in parts)
    if isinstance(expr, Mul):
        scale = 1.0
        linear = None
        for c in expr.children:
            if c.max_variable() < 0:
                scale *= c.evaluate(zeros)
            elif linear is None:
                linear = _affine(c, n)
                if linear is None:
                    return None
            else:
                return None
        return scale * linear[0], scale * linear[1]
    if isinstance(expr, IntPow) and expr.exponent == 1:
        return _affine(expr.child, n)
    return None


class _DocumentParser:

    def __init__(self, text):
        self.s = _Scanner(_lex(text))
        self.entries = {}

    def parse(self):
        while not self.s.peek('END'):
            key = self.s.expect('IDENT', 'field name')
            if key.text not in _FIELDS:
                self.s.error(f'unknown field {key.text!r}', key)
            if key.text in self.entries:
                self.s.error(f'duplicate field {key.text!r}', key)
            self.s.expect('COLON', "':'")
            self.entries[key.text] = (key, self._value(key.text))
            self.s.accept('COMMA')
        return self._build()

    def _integer(self):
        token = self.s.expect('NUMBER', 'integer')
        if not token.text.isdigit() or int(token.text) < 1:
            self.s.error('expected a positive integer', token)
        return int(token.text)

    def _real(self):
        negative = self.s.accept('MINUS') is not None
        token = self.s.token
        if self.s.accept('IDENT'):
            if token.text != 'inf':
                self.s.error(f'expected a number, found {token.text!r}', token)
            value = math.inf
        else:
            value = float(self.s.expect('NUMBER', 'number').text)
        return -value if negative else value

    def _list(self, item):
        self.s.expect('LBRACK', "'['")
        items = []
        if not self.s.peek('RBRACK'):
            items.append(item())
            while self.s.accept('COMMA'):
                items.append(item())
        self.s.expect('RBRACK', "']'")
        return items

    def _string(self):
        token = self.s.expect('STRING', 'quoted string')
        return token.text[1:-1], token.line, token.column + 1

    def _pair(self):
        start = self.s.token
        pair = self._list(self._real)
        if len(pair) != 2:
            self.s.error('box intervals need exactly two bounds', start)
        if pair[0] > pair[1] or pair[0] == math.inf or pair[1] == -math.inf:
            self.s.error(f'invalid box interval [{pair[0]}, {pair[1]}]', start)
        return tuple(pair)

    def _value(self, key):
        if key in ('n', 'm'):
            return self._integer()
        if key == 'objectives':
            return self._list(self._string)
        kind = self.s.expect('IDENT', 'constraint kind')
        if kind.text == 'full':
            return kind, None
        if kind.text == 'box':
            return kind, self._list(self._pair)
        if kind.text in ('polyhedron', 'smooth'):
            return kind, self._list(self._string)
        self.s.error(f'unknown constraint kind {kind.text!r}', kind)

    def _build(self):
        end = self.s.token
        if 'objectives' not in self.entries:
            self.s.error("missing field 'objectives'", end)
        key, sources = self.entries['objectives']
        if not sources:
            self.s.error('objectives must not be empty', key)
        n = self.entries['n'][1] if 'n' in self.entries else None
        kind, rows = self.entries.get('constraints', (None, (None, None)))[1]
        if n is None and kind is not None and kind.text == 'box':
            n = len(rows)
        objectives = [parse_expression(text, n, line, column) for text, line, column in sources]
        constraints = []
        if kind is not None and kind.text in ('polyhedron', 'smooth'):
            constraints = [(_constraint(*src), src) for src in rows]
        if n is None:
            exprs = objectives + [c for c, _ in constraints]
            n = max(1, 1 + max(e.max_variable() for e in exprs))
        for c, (_, line, column) in constraints:
            if c.max_variable() >= n:
                raise ParseError(f'constraint uses x{c.max_variable() + 1} beyond n={n}', line, column)
        if 'm' in self.entries and self.entries['m'][1] != len(objectives):
            self.s.error(f'm={self.entries["m"][1]} does not match {len(objectives)} objectives',
                         self.entries['m'][0])
        return Problem(n, len(objectives), tuple(objectives), self._feasible(kind, rows, constraints, n))

    def _feasible(self, kind, rows, constraints, n):
        if kind is None or kind.text == 'full':
            return FullSpace(n)
        if kind.text == 'box':
            if len(rows) != n:
                self.s.error(f'box has {len(rows)} intervals, expected n={n}', kind)
            return Box(tuple(r[0] for r in rows), tuple(r[1] for r in rows))
        if not constraints:
            self.s.error(f'{kind.text} requires at least one row', kind)
        if kind.text == 'smooth':
            for c, (_, line, column) in constraints:
                if not c.is_smooth():
                    raise ParseError('smooth constraints must not use abs, max or min', line, column)
            return SmoothIneq(tuple(c for c, _ in constraints), n)
        normals = []
        offsets = []
        for c, (_, line, column) in constraints:
            r = _affine(c, n)
            if r is None:
                raise ParseError('polyhedron rows must be affine', line, column)
            if not np.any(r[0]):
                raise ParseError('polyhedron row has a zero normal', line, column)
            normals.append(tuple(r[0].tolist()))
            offsets.append(-float(r[1]))
        return Polyhedron(tuple(normals), tuple(offsets))


def parse_problem(text):
    """Parse a problem file.

    :param text: The problem-file contents.
    :return: The :class:`Problem`.
    :raise ParseError: On any syntax or consistency error, with the
        1-based line and column.
    """
    problem = _DocumentParser(text).parse()
    log.debug('parsed problem n=%d, m=%d, %s', problem.n, problem.m, type(problem.feasible).__name__)
    return problem


def _number(value):
    if value == math.inf:
        return 'inf'
    if value == -math.inf:
        return '-inf'
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


_LEVEL_SUM = 1
_LEVEL_TERM = 2
_LEVEL_UNARY = 3
_LEVEL_ATOM = 5


def _render(expr):
    """Get (text, precedence level) for an expression."""
    if isinstance(expr, Constant):
        return _number(expr.value), _LEVEL_UNARY if expr.value < 0 else _LEVEL_ATOM
    if isinstance(expr, Variable):
        return f'x{expr.index + 1}', _LEVEL_ATOM
    if isinstance(expr, Add):
        parts = [_wrap(expr.children[0], _LEVEL_TERM)]
        for c in expr.children[1:]:
            if isinstance(c, Neg):
                parts.append('- ' + _wrap(c.child, _LEVEL_TERM))
            else:
                parts.append('+ ' + _wrap(c, _LEVEL_TERM))
        return ' '.join(parts), _LEVEL_SUM
    if isinstance(expr, Mul):
        return '*'.join(_wrap(c, _LEVEL_UNARY) for c in expr.children), _LEVEL_TERM
    if isinstance(expr, Neg):
        if isinstance(expr.child, Constant):
            return f'-({_number(expr.child.value)})', _LEVEL_UNARY
        return '-' + _wrap(expr.child, _LEVEL_UNARY), _LEVEL_UNARY
    if isinstance(expr, IntPow):
        return f'{_wrap(expr.child, _LEVEL_ATOM)}^{expr.exponent}', _LEVEL_ATOM - 1
    for name, (cls, _) in _FUNCTIONS.items():
        if type(expr) is cls:
            return f'{name}({", ".join(render_expression(c) for c in expr.children)})', _LEVEL_ATOM
    raise TypeError(f'unsupported expression {expr!r}')


def _wrap(expr, level):
    text, own = _render(expr)
    return text if own >= level else f'({text})'


def render_expression(expr):
    """Render an expression in the objective grammar."""
    return _render(expr)[0]


def _affine_row(a, b):
    terms = []
    for i, v in enumerate(a):
        if v == 1.0:
            terms.append(f'x{i + 1}')
        elif v:
            terms.append(f'{_number(v)}*x{i + 1}')
    return f'{" + ".join(terms)} <= {_number(b)}'


def render(problem):
    """Serialize a problem to the problem-file format.

    :param problem: The :class:`Problem`.
    :return: The text, which :func:`parse_problem` maps back to an equal problem.
    """
    objectives = ', '.join(f'"{render_expression(f)}"' for f in problem.objectives)
    feasible = problem.feasible
    if isinstance(feasible, FullSpace):
        constraints = 'full'
    elif isinstance(feasible, Box):
        pairs = ', '.join(f'[{_number(lo)}, {_number(hi)}]' for lo, hi in zip(feasible.lower, feasible.upper))
        constraints = f'box [{pairs}]'
    elif isinstance(feasible, Polyhedron):
        rows = ', '.join(f'"{_affine_row(a, b)}"' for a, b in zip(feasible.normals, feasible.offsets))
        constraints = f'polyhedron [{rows}]'
    elif isinstance(feasible, SmoothIneq):
        rows = ', '.join(f'"{render_expression(g)} <= 0"' for g in feasible.constraints)
        constraints = f'smooth [{rows}]'
    else:
        raise TypeError(f'unsupported feasible set {feasible!r}')
    return '\n'.join([
        f'n: {problem.n}',
        f'm: {problem.m}',
        f'objectives: [{objectives}]',
        f'constraints: {constraints}',
        '',
    ])
