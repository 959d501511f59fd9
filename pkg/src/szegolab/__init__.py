"""szegolab: a numerical laboratory for weighted Neumann eigenvalue
extremal problems on sliding intervals, balls, and rearranged sets."""

from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
