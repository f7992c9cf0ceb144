"""Continuum Monte Carlo engine for planar polygonal Markov fields."""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND  # noqa: F401
