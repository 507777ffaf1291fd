"""Split-search kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it was built and the environment
variable ``CRICPRED_PURE_PYTHON`` is not set to ``1``. Both backends are
bit-compatible; ``BACKEND`` records which one is active.
"""

import os

BACKEND = "python"

if os.environ.get("CRICPRED_PURE_PYTHON") != "1":
    try:
        from ._split import best_split_gini, best_split_sse  # noqa: F401
        BACKEND = "compiled"
    except ImportError:
        pass

if BACKEND == "python":
    from ._split_py import best_split_gini, best_split_sse  # noqa: F401

__all__ = ["best_split_gini", "best_split_sse", "BACKEND"]
