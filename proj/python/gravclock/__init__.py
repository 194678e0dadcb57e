"""Python bindings for the gravclock library."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_scenario  # noqa: F401
