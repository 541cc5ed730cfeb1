"""Python front end for the augmatch core.

Everything is re-exported from the compiled module `_core`; see its docstrings
for the operation-level reference.
"""

from ._core import *  # noqa: F401,F403
from . import _core as _c

__all__ = [name for name in dir(_c) if not name.startswith("_")]
