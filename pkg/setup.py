import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SSSCHED_NO_EXT", "") not in ("1", "true"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "sssched._kernels._core",
                    ["src/sssched/_kernels/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython: the pure-Python kernels are used at runtime.
        ext_modules = []

setup(ext_modules=ext_modules)
