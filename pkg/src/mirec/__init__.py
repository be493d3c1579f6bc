"""Exact construction and recurrence checks for multi-indexed (q-)Racah polynomials."""

from .errors import *  # noqa: F401,F403
from .exact import Matrix, Poly, Q, fmt, interpolate, solve_linear, divrem
from .family import ParameterSet
from .kernels import BACKEND_NAME

__version__ = "0.1.0"

__all__ = ["Matrix", "Poly", "Q", "fmt", "interpolate", "solve_linear", "divrem",
           "ParameterSet", "BACKEND_NAME"]
