"""Online greedy scheduling of block-structured jobs on unrelated machines."""

from flowsched._core import *  # noqa: F401,F403
from flowsched._core import __version__  # noqa: F401
