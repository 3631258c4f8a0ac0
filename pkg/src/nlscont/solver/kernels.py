"""Backend selection for the stepping kernels.

The Cython extension is used when built; otherwise the numpy/scipy fallback.
Set NLSCONT_FORCE_BACKEND=numpy (or cython) to override, e.g. for the
backend-parity tests and the benchmark.
"""

from __future__ import annotations

import os

_forced = os.environ.get("NLSCONT_FORCE_BACKEND", "").lower()

if _forced == "numpy":
    from . import _kernels_py as _impl
elif _forced == "cython":
    from . import _kernels as _impl  # ImportError here is intentional: forced backend missing
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
nl_substep = _impl.nl_substep
cn_apply = _impl.cn_apply
