"""Build script for the compiled linear-algebra kernels.

The package is fully functional without the extension (a NumPy/SciPy
fallback is selected at import time); building it just makes the inner
doubling/solve kernels run without Python-level overhead.
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "qme._kernels._native",
        sources=["src/qme/_kernels/_native.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level="3"))
