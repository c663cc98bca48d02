"""Select the kernel implementation at import time.

The compiled extension is preferred; setting ``CAYLEYPERTURB_PURE_PYTHON=1``
forces the numpy fallback (used by the benchmark and the kernel tests).
"""
import os

if os.environ.get("CAYLEYPERTURB_PURE_PYTHON"):
    from . import _pykernels as kernels
    KERNEL_BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        KERNEL_BACKEND = "compiled"
    except ImportError:
        from . import _pykernels as kernels
        KERNEL_BACKEND = "python"

__all__ = ["kernels", "KERNEL_BACKEND"]
