"""Pick the compiled kernels when they import, the pure-Python ones otherwise.

Set ``OMC_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("OMC_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

backend = compiled_backend or python_backend
BACKEND_NAME = "compiled" if compiled_backend is not None else "python"
