"""Build script: compiles the optional Cython kernel for the plane-search hot loops.

If no C compiler (or Cython) is available the build falls back to a pure-Python
wheel; the package selects the numpy fallback kernels at import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise continue without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: skipping compiled kernels ({exc}); "
                  f"pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: failed to compile {ext.name} ({exc}); "
                  f"pure-Python fallback will be used")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:  # pragma: no cover - depends on toolchain
        return []
    return cythonize(
        [
            Extension(
                "pagecert._kernels_c",
                ["src/pagecert/_kernels_c.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
