"""Hot assembly kernels with a compiled core and a NumPy fallback.

The compiled extension (Cython) is used when it was built; otherwise the
NumPy implementation takes over with identical semantics. Set
``PIPEFLOW_KERNELS=pure`` or ``PIPEFLOW_KERNELS=compiled`` to force a
backend (forcing ``compiled`` raises if the extension is missing).
"""

import os

from . import pure

_requested = os.environ.get("PIPEFLOW_KERNELS", "").strip().lower()

if _requested not in ("", "pure", "compiled"):
    raise ValueError(f"PIPEFLOW_KERNELS must be 'pure' or 'compiled', got {_requested!r}")

if _requested == "pure":
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _fast as _impl

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = pure
        BACKEND = "pure"

sweep_blocks = _impl.sweep_blocks
