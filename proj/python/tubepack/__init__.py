"""Temporal tube packing for video synopsis."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
