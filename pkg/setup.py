"""Build script: compiles the Cython kernel when a toolchain is available.

The package works without the extension (the pure-Python kernel is selected
at import time), so a failed compile only costs speed.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/bswidth/_ckernel.pyx"],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(f"bswidth: skipping compiled kernel ({exc})\n")

setup(ext_modules=ext_modules)
