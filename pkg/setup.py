"""Build the optional compiled unification kernel.

The package works without the extension: stellres.kernel falls back to the
pure-Python twin when the compiled module is missing or STELLRES_PURE=1 is
set. Any failure below therefore degrades the install instead of breaking it.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain
            print(f"warning: compiled kernel skipped ({exc}); using pure-Python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} skipped ({exc}); using pure-Python backend")


ext_modules = []
if not os.environ.get("STELLRES_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "stellres._kernel",
                    ["src/stellres/_kernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("warning: Cython unavailable; using pure-Python backend")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
