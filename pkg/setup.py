"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so failures here only cost speed, not functionality.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HARDYG_NO_EXT") != "1" and os.path.exists("src/hardyg/_kernels.pyx"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "hardyg._kernels",
                    ["src/hardyg/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
