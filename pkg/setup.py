"""Build script: compiles the optional Cython search kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so any failure here downgrades to a plain install instead
of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from setuptools import Extension
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "racforge._search_cy",
                ["src/racforge/_search_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on build env
    print(f"rac-forge: skipping compiled search kernel ({exc!r})")

setup(ext_modules=ext_modules)
