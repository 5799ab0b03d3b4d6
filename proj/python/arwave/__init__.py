"""Arithmetic random waves on the flat torus.

Frequency-set arithmetic, trigonometric covariance kernels, constructive
almost-period search, Gaussian wave sampling, and nodal-line geometry. The
heavy lifting lives in the compiled extension; this package just re-exports
it.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
