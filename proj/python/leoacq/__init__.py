"""Closed-form LEO-to-ground link acquisition time model with Monte Carlo
verification. Thin wrapper over the C++ core."""

from ._core import *  # noqa: F401,F403
