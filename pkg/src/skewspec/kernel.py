"""Backend selection for the exact-rational hot loops.

The compiled ``_ckernel`` extension is used when it was built; otherwise the
pure-Python ``_pykernel`` takes over. Setting ``SKEWSPEC_PURE_PYTHON=1``
forces the fallback, which the test suite uses to check both backends agree.
"""

import os

if os.environ.get("SKEWSPEC_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernel as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernel as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _pykernel as _impl
        BACKEND = "python"

eval_point = _impl.eval_point
image = _impl.image
orbit_point = _impl.orbit_point
orbit_trace = _impl.orbit_trace
image_chain = _impl.image_chain
min_chain_length = _impl.min_chain_length

__all__ = [
    "BACKEND",
    "eval_point",
    "image",
    "orbit_point",
    "orbit_trace",
    "image_chain",
    "min_chain_length",
]
