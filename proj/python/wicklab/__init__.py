"""Python bindings for the wicklab C++ core."""

from ._wicklab import *  # noqa: F401,F403
from ._wicklab import __version__  # noqa: F401
