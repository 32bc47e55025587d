"""Genus theory and second moments of representation numbers of x^2 + N y^2."""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
