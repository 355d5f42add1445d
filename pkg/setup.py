import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("KSEC_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "ksecretary._kernels._ckernels",
                    ["src/ksecretary/_kernels/_ckernels.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython at build time: install the pure-Python package only.
        # The kernel loader falls back to the Python implementation at import.
        ext_modules = []

setup(ext_modules=ext_modules)
