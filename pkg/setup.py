"""Build the optional compiled eigen kernels (cyclic Jacobi, tridiagonal QL).

The package works without it: ``confosc.kernels`` falls back to a numpy
implementation when the extension cannot be imported.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CONFOSC_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "confosc._kernels_ext",
                    ["src/confosc/_kernels_ext.pyx"],
                    include_dirs=[np.get_include()],
                    # no -ffast-math: the rotation formulas rely on IEEE semantics
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
