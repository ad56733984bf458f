"""Select the product kernel at import time.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``BSSKEIN_PURE_PYTHON`` is set to a non-empty value,
the pure-Python twin is used.  Both expose the same three functions.
"""
from __future__ import annotations

import os

from . import _pykernels

python_kernel = _pykernels

if os.environ.get("BSSKEIN_PURE_PYTHON"):
    compiled_kernel = None
else:
    try:
        from . import _ckernels as compiled_kernel
    except ImportError:  # extension not built
        compiled_kernel = None

active = compiled_kernel if compiled_kernel is not None else python_kernel
BACKEND = "compiled" if compiled_kernel is not None else "python"

ZERO = _pykernels.ZERO
OUTSIDE = _pykernels.OUTSIDE
MAX_POINTS = 14  # 4 bits per point plus the class mask must fit in 63 bits

mul_code = active.mul_code
mul_index_table = active.mul_index_table
associativity_violations = active.associativity_violations
