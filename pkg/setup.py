import os
import sys

import numpy as np
from setuptools import Extension, setup

# The compiled core is optional: without Cython (or with KDIAMOND_NO_EXT=1)
# the package installs with its pure-Python kernels only.
ext_modules = []
if not os.environ.get("KDIAMOND_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not found, building without the compiled kernels", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "kdiamond._kernels",
                    ["src/kdiamond/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
