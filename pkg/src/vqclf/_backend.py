"""Kernel backend selection.

The compiled Cython kernels are preferred; the pure-numpy module is the
fallback when the extension was not built. Set ``VQCLF_PURE_PYTHON=1`` to
force the fallback (used by tests and the kernel benchmark).
"""

import os

if os.environ.get("VQCLF_PURE_PYTHON"):
    from . import _gatekernels_py as kernels
else:
    try:
        from . import _gatekernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _gatekernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    """Name of the active gate-kernel backend ('compiled' or 'python')."""
    return kernels.backend_name()
