"""Select the kernel implementation at import time.

The compiled ``_ckernels`` module is preferred; set ``OSTROWSKI_PURE_PYTHON=1``
to force the pure-Python fallback (used by the benchmark and by CI runs that
exercise both paths).
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("OSTROWSKI_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        kernels = _pykernels
        BACKEND = "python"

__all__ = ["BACKEND", "kernels"]
