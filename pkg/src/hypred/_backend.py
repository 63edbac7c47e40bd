"""Select the array-kernel backend at import time.

The compiled Cython core is preferred when present; the NumPy implementation
is the fallback.  Override with HYPRED_BACKEND=compiled|python (``compiled``
raises if the extension is missing instead of silently falling back).
"""

import os

_choice = os.environ.get("HYPRED_BACKEND", "auto").strip().lower()

if _choice in ("auto", "", "compiled", "fast"):
    try:
        from . import _fastcore as core
        BACKEND = "compiled"
    except ImportError:
        if _choice in ("compiled", "fast"):
            raise
        from . import _purecore as core
        BACKEND = "python"
elif _choice in ("python", "numpy", "pure"):
    from . import _purecore as core
    BACKEND = "python"
else:
    raise ValueError(f"unknown HYPRED_BACKEND value: {_choice!r}")

widths_minmax = core.widths_minmax
covered_by_any = core.covered_by_any
min_signed = core.min_signed
max_pair_mdot = core.max_pair_mdot


def backend_name():
    """Name of the active kernel backend ('compiled' or 'python')."""
    return BACKEND
