"""Underspecified discourse representations: construction, scope resolution
and model-theoretic interpretation into DRSs."""

from ._lud import *  # noqa: F401,F403
from ._lud import __version__  # noqa: F401
