"""B-Exponential map dynamics, the BEACH bit generator and an ENT-style battery."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
