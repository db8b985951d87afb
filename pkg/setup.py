"""Build the optional compiled kernel extension.

The package works without it (pure-numpy fallback selected at import);
a failed compile therefore only costs speed, so the extension is marked
optional.  -ffp-contract=off keeps the compiled arithmetic bit-identical
to the numpy kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "gheat._kernels",
                ["src/gheat/_kernels.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
