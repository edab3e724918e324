"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python twin of every kernel
is selected at import time), so a failed compile is downgraded to a warning.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/factforest/_kernels/_cyimpl.pyx"],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    sys.stderr.write(f"factforest: skipping Cython kernels ({exc!r}); "
                     f"pure-Python fallback will be used\n")

try:
    setup(ext_modules=ext_modules)
except SystemExit:  # pragma: no cover - compiler missing at build time
    if not ext_modules:
        raise
    sys.stderr.write("factforest: extension build failed; retrying pure Python\n")
    setup(ext_modules=[])
