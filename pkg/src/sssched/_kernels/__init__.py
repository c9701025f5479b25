"""Kernel backend selection.

The compiled extension ``_core`` is preferred when it imported cleanly; the
pure-Python module ``pure`` is the fallback. Setting the environment variable
``SSSCHED_PURE_KERNELS=1`` forces the fallback (useful for debugging and for
the backend benchmark). Both backends produce bit-identical results.
"""

import os

if os.environ.get("SSSCHED_PURE_KERNELS", "0") not in ("", "0"):
    from . import pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import pure as _impl

        BACKEND = "pure"

density_interval_durations = _impl.density_interval_durations
pack_frontier = _impl.pack_frontier
pack_preemptive = _impl.pack_preemptive

__all__ = ["BACKEND", "density_interval_durations", "pack_frontier", "pack_preemptive"]
