"""Minimax lower bounds, least-favorable priors and local minimax risks."""

from ._core import *  # noqa: F401,F403
from ._core import Error, NumericalError, ValidationError

__all__ = [name for name in dir() if not name.startswith("_")]
