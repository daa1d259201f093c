"""Build script: compiles the optional Cython elimination kernel.

The package works without the extension (a pure numpy fallback is selected
at import time), so any build failure here downgrades to a warning instead
of aborting the install.  Set FERMATSYZ_PURE=1 to skip the extension
entirely.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that tolerates a missing compiler or failed compile."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: could not build the fermatsyz._kernels._modp extension "
            f"({exc!r}); falling back to the pure Python kernels",
            file=sys.stderr,
        )


ext_modules = []
cmdclass = {}
if os.environ.get("FERMATSYZ_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "fermatsyz._kernels._modp",
                    sources=["src/fermatsyz/_kernels/_modp.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        cmdclass["build_ext"] = OptionalBuildExt
    except ImportError:  # pragma: no cover - cython not installed
        print(
            "warning: Cython not available; installing with pure Python kernels",
            file=sys.stderr,
        )

setup(ext_modules=ext_modules, cmdclass=cmdclass)
