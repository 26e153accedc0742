"""Build the optional compiled kernel extension.

    python setup.py build_ext --inplace

The package works without it (a pure-Python fallback is selected at import);
the extension makes Monte Carlo batches and exhaustive enumeration fast.
"""
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("connected_cm._kernels", ["src/connected_cm/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
