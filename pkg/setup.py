"""Build script for the optional compiled simplex kernel.

The pivoting kernel in ``congame/_simplex.py`` is written so that the same
source file either compiles to a C extension (via Cython's pure Python mode)
or runs interpreted. If Cython or a C compiler is unavailable the extension
is simply skipped and the package falls back to the interpreted kernel at
import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Let the extension build fail without failing the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: compiled kernel skipped ({exc}); "
                  "using the interpreted fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: building {ext.name} failed ({exc}); "
                  "using the interpreted fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - build environment dependent
        return []
    ext = Extension(
        "congame._simplex",
        ["src/congame/_simplex.py"],
        # -ffp-contract=off, no -ffast-math: the compiled kernel must produce
        # bit-identical floating point results to the interpreted fallback.
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
