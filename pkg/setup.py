"""Build script: compiles the optional Cython kernel.

The compiled extension is a pure speedup; if Cython or a C compiler is
unavailable the package falls back to the pure-Python kernel at import
time.  Set BELLBOUND_PURE=1 to skip the extension build entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Degrade to the pure-Python kernel when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping C kernel build ({exc}); "
                  "pure-Python kernel will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to compile {ext.name} ({exc}); "
                  "pure-Python kernel will be used")


ext_modules = []
if os.environ.get("BELLBOUND_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("bellbound._kernel._ckernel",
                       ["src/bellbound/_kernel/_ckernel.pyx"])],
            language_level="3",
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
