"""Crooked-plane geometry kernel.

Exact disjointness of crooked planes in Minkowski 3-space and synthesis of
crooked foliations interpolating between disjoint pairs.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
