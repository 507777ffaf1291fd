"""Build the optional compiled split-search kernel.

The package works without it (a pure-numpy fallback is selected at import);
the extension is skipped when Cython or a compiler is unavailable, or when
CRICPRED_SKIP_EXT=1 is set.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("CRICPRED_SKIP_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension(
                "cricpred.kernels._split",
                ["src/cricpred/kernels/_split.pyx"],
                include_dirs=[np.get_include()],
            )],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
