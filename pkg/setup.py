"""Build script: compiles the optional log-domain kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import); any compiler failure therefore degrades to a warning
instead of aborting the install.
"""

import sys

import numpy
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building shiftorbits._core failed ({exc!r}); "
            "falling back to the pure-Python kernels.",
            file=sys.stderr,
        )


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "shiftorbits._core",
                ["src/shiftorbits/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
