"""Conservative solver for the linearized condensate/normal-fluid kinetic system.

The heavy lifting lives in the C++ extension module; this package re-exports
its surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"
