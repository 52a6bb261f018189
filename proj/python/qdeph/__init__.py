"""Correlated dephasing environments: is the bath genuinely quantum?

Thin wrapper around the compiled core. The witness is the minimum
eigenvalue of the partial-transpose-transformed rate matrix; a negative
value certifies that the environment generates system entanglement.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
