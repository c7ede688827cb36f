"""Selects the plane-search kernel implementation at import time.

The compiled Cython kernels are used when the extension built; otherwise the
numpy fallback is selected.  Set PAGECERT_PURE_PYTHON=1 to force the fallback
(used by the benchmark and the backend parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("PAGECERT_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels_c as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def backend_name() -> str:
    return "compiled" if kernels.__name__.endswith("_c") else "python"
