"""Hot numeric kernels with a compiled core and a pure-Python fallback.

The compiled extension is preferred when the build produced it; otherwise
the fallback in `_pycore` is used transparently. `BACKEND` records which
one was selected at import time.
"""

try:
    from ._core import css_residuals

    BACKEND = "compiled"
except ImportError:  # extension not built on this platform
    from ._pycore import css_residuals

    BACKEND = "python"

__all__ = ["css_residuals", "BACKEND"]
