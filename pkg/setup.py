import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the compiled kernel if possible; the package falls back to pure
    Python at import time otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or Cython missing
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"warning: compiled kernel not built ({exc}); using pure Python",
              file=sys.stderr)


def extensions():
    if os.environ.get("HIERMINE_NO_EXT"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "hiermine._ckernel",
        ["src/hiermine/_ckernel.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
        language="c++",
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
