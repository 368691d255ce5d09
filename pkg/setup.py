import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# search backend when circfam._speedups is missing. Set CIRCFAM_SKIP_EXT=1 to
# install without a C toolchain.
ext_modules = []
if not os.environ.get("CIRCFAM_SKIP_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "circfam._speedups",
                ["src/circfam/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )

setup(ext_modules=ext_modules)
