"""Backend selection for the hot kernels.

Importing this module picks the compiled extension when it is available
and falls back to the pure numpy implementation otherwise.  Setting the
environment variable APCORR_PURE=1 forces the fallback, which is how the
benchmark and the equivalence tests compare the two.
"""

from __future__ import annotations

import os

if os.environ.get("APCORR_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "pure"

spf_fill = _impl.spf_fill
direct_corr_int = _impl.direct_corr_int
direct_corr_real = _impl.direct_corr_real
fnv1a64 = _impl.fnv1a64

__all__ = [
    "BACKEND",
    "spf_fill",
    "direct_corr_int",
    "direct_corr_real",
    "fnv1a64",
]
