from .version import __version__, __title__, __description__, __url__, \
    __author__, __author_email__, __license__, __copyright__

from .errors import VecOptError
from .config import Thresholds
from .problem import Box, FullSpace, Polyhedron, Problem, SmoothIneq, SublevelBound
from .parser import parse_problem, parse_expression, render
from .minnorm import RabierMode, rabier, rabier_nu, gamma_residual
