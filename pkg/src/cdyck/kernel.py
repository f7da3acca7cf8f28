"""Backend selection for the oracle's hot loop.

The compiled extension is used when it was built; otherwise the pure-Python
implementation is loaded. Setting ``CDYCK_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _kernel_py

python_dd_histogram = _kernel_py.dd_histogram

try:
    if os.environ.get("CDYCK_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced")
    from ._kernel import dd_histogram as compiled_dd_histogram
except ImportError:
    compiled_dd_histogram = None

if compiled_dd_histogram is not None:
    dd_histogram = compiled_dd_histogram
    BACKEND = "cython"
else:
    dd_histogram = python_dd_histogram
    BACKEND = "python"

__all__ = ["BACKEND", "dd_histogram", "compiled_dd_histogram", "python_dd_histogram"]
