"""Backend selection for the F_p search kernels.

The compiled module is used when it imports; set ``CLIFFORD_FORGE_PURE=1`` to
force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("CLIFFORD_FORGE_PURE") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

search_fp = _impl.search_fp
relations_vanish_fp = _impl.relations_vanish_fp

# p >= 2^31 overflows the compiled int64 products
MAX_COMPILED_P = 2**31


def backends() -> dict:
    out = {"python": _pykernels}
    if _impl is not _pykernels:
        out["cython"] = _impl
    return out
