"""Noncommutative Fourier analysis and uncertainty principles on finite groups."""

from ._ncfa import *  # noqa: F401,F403
from ._ncfa import __version__  # noqa: F401
