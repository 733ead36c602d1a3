"""Liouville sign-pattern statistics: sieves, pattern counts, correlation
sums, and the digit expansion of the lambda-driven constant."""

from liouville._core import *  # noqa: F401,F403
from liouville._core import __version__  # noqa: F401
