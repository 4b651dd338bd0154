"""Exact tools for the bidirected cut relaxation of Steiner Forest.

Rational values cross the boundary as fractions.Fraction.
"""

from ._core import *  # noqa: F401,F403
from ._core import Error, Instance, Solution  # noqa: F401
