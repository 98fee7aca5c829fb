"""Build script: compiles the quadrature core when Cython and a C compiler
are available, and falls back to the pure-Python module otherwise.

`src/heiskern/_quadcore.py` is written in Cython pure-Python mode, so the
same file is both the extension source and the interpreted fallback.
Set HEISKERN_NO_EXTENSION=1 to skip the compile step entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never fail the install because the extension would not build."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled core ({exc}); "
                  f"the pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not compile {ext.name} ({exc}); "
                  f"the pure-Python fallback will be used")


ext_modules = []
cmdclass = {}
if os.environ.get("HEISKERN_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension(
                "heiskern._quadcore",
                ["src/heiskern/_quadcore.py"],
                extra_compile_args=["-O3"],
            )],
            compiler_directives={"language_level": "3"},
        )
        cmdclass["build_ext"] = OptionalBuildExt
    except ImportError:
        print("warning: Cython not available; using the pure-Python core")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
