"""Build script: compiles the optional Cython kernel module.

The package works without the extension (a pure-Python implementation of
the same kernels is selected at import time), so the build degrades
gracefully when Cython or a C compiler is unavailable.
"""

import os

from setuptools import Extension, setup

_PYX = os.path.join("src", "torusdet", "_kernels_cy.pyx")

ext_modules = []
if os.path.exists(_PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("torusdet._kernels_cy", [_PYX])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
