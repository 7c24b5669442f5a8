"""Build hook for the optional compiled scan kernels.

Metadata lives in pyproject.toml.  When Cython or a C compiler is missing
the package installs without the extension and runs on the pure-Python
fallback.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("nleibniz._scan", ["src/nleibniz/_scan.pyx"],
                   extra_compile_args=["-O3"], optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
