"""Builds the optional compiled enumeration kernel.

The package works without it (a pure-Python fallback is selected at
import time); building requires Cython and a C compiler.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("nearefx._sweep", ["src/nearefx/_sweep.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
