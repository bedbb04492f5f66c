"""Kernel selection: compiled extension when present, pure Python otherwise.

Set ``ETKIT_PURE=1`` to force the pure-Python kernels (used by the
benchmark and by equivalence tests).
"""

import os

if os.environ.get("ETKIT_PURE"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

KERNEL_IMPL: str = kernels.IMPL
