"""Hot-kernel selection.

The compiled extension is used when it imports cleanly; setting
``HYPJAC_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("HYPJAC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"

bareiss_rank = _impl.bareiss_rank
rank_mod_p = _impl.rank_mod_p
poly_mul = _impl.poly_mul
poly_addmul_mono = _impl.poly_addmul_mono

__all__ = ["BACKEND", "bareiss_rank", "rank_mod_p", "poly_mul", "poly_addmul_mono"]
