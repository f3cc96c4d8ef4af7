import os

from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: when Cython or
# a C compiler is missing (or POWERCLASS_PURE=1 is set) the package installs
# with the pure-Python fallback in powerclass._kernels.pykernels.
ext_modules = []
if os.environ.get("POWERCLASS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "powerclass._kernels._ckernels",
                    ["src/powerclass/_kernels/_ckernels.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
