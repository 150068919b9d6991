"""Float kernels: the compiled extension when it was built, numpy otherwise.

Set ``QUADSTAB_PURE=1`` to force the numpy versions.
"""

from __future__ import annotations

import os

if os.environ.get("QUADSTAB_PURE"):
    from ._kernels_py import L_batch, bipoly_grid

    BACKEND = "numpy"
else:
    try:
        from ._kernels import L_batch, bipoly_grid

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import L_batch, bipoly_grid

        BACKEND = "numpy"

__all__ = ["BACKEND", "L_batch", "bipoly_grid"]
