"""Kernel backend selection.

Prefers the compiled Cython extension; falls back to the pure-numpy
implementation when the extension is missing or RULEDKIT_PURE=1 is set.
Both backends expose the same names with identical semantics.
"""

import os

if os.environ.get("RULEDKIT_PURE") == "1":
    from ._kernels_py import (  # noqa: F401
        BACKEND,
        dual_orthonormalize,
        frenet_rk4,
        series_div,
        series_mul,
        series_sqrt,
    )
else:
    try:
        from ._kernels import (  # noqa: F401
            BACKEND,
            dual_orthonormalize,
            frenet_rk4,
            series_div,
            series_mul,
            series_sqrt,
        )
    except ImportError:
        from ._kernels_py import (  # noqa: F401
            BACKEND,
            dual_orthonormalize,
            frenet_rk4,
            series_div,
            series_mul,
            series_sqrt,
        )
