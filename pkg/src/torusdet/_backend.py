"""Kernel backend selection.

The compiled Cython kernels are used when importable; the pure-Python
implementation is the fallback.  Set TORUSDET_PURE_PY=1 to force the
fallback (useful for benchmarking and debugging).
"""

import os

if os.environ.get("TORUSDET_PURE_PY"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"


def backend_name() -> str:
    """Name of the kernel implementation in use: 'cython' or 'python'."""
    return BACKEND
