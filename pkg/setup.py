"""Build script for the optional compiled row-reduction core.

The package is pure Python except for pathkoszul._ffcore, a small Cython
extension holding the mod-p elimination kernels.  The extension is marked
optional: if Cython or a C compiler is unavailable the install still
succeeds and the package falls back to the pure backend at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "pathkoszul._ffcore",
                ["src/pathkoszul/_ffcore.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
