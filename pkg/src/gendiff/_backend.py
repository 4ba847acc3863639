"""Kernel backend selection.

The compiled extension (gendiff._kernels, Cython) is preferred; the numpy
fallback (gendiff._kernels_py) is used when the extension is not built.
Set GENDIFF_BACKEND=python to force the fallback.  Per backend, results are
bit-reproducible; across backends they agree to rounding, not bit-for-bit.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built in this environment
    _compiled = None

if _compiled is not None and os.environ.get("GENDIFF_BACKEND", "") != "python":
    kernels = _compiled
    BACKEND = "compiled"
else:
    kernels = _kernels_py
    BACKEND = "python"


def get_kernels(which: str = "active"):
    """Return a kernel module: "active", "python", or "compiled" (None if unbuilt)."""
    if which == "active":
        return kernels
    if which == "python":
        return _kernels_py
    if which == "compiled":
        return _compiled
    raise ValueError(f"unknown backend {which!r}")
