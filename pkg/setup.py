"""Builds the optional compiled kernel.

The package is fully functional without it (the numpy fallback in
biheyt._kernels_py is selected at import), so the extension is marked
optional: a failed compile degrades to a warning, not a broken install.
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
                "biheyt._kernels_cy",
                ["src/biheyt/_kernels_cy.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
    for ext in ext_modules:
        ext.optional = True

setup(ext_modules=ext_modules)
