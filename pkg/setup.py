import os

from setuptools import setup

ext_modules = []
if os.environ.get("SPARSEWITNESS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/sparsewitness/hotpath/_speedups.pyx"],
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "language_level": "3",
                "cdivision": True,
            },
        )
    except ImportError:
        # Pure-Python fallback is selected at import time when the
        # compiled kernel is unavailable.
        ext_modules = []

setup(ext_modules=ext_modules)
