"""Hot-loop backend selection.

The compiled Cython kernels are used when importable; setting the
environment variable ``KDIAMOND_PURE_PYTHON=1`` forces the pure-Python
fallback.  ``BACKEND`` names the active choice.
"""

import os

from . import _fallback
from ._fallback import div_sparse_exact, mul_sparse_exact

try:
    if os.environ.get("KDIAMOND_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from ._kernels import div_sparse_mod, mul_sparse_mod
    BACKEND = "cython"
except ImportError:
    from ._fallback import div_sparse_mod, mul_sparse_mod
    BACKEND = "python"


def backends():
    """Return ``{name: (mul_sparse_mod, div_sparse_mod)}`` for every importable backend."""
    found = {"python": (_fallback.mul_sparse_mod, _fallback.div_sparse_mod)}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["cython"] = (_kernels.mul_sparse_mod, _kernels.div_sparse_mod)
    return found


__all__ = [
    "BACKEND",
    "backends",
    "div_sparse_exact",
    "div_sparse_mod",
    "mul_sparse_exact",
    "mul_sparse_mod",
]
