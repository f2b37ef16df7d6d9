"""Builds the optional compiled kernels; the package works without them."""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fall back to the pure kernels
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("nelson_s.kernels._ckernels", ["src/nelson_s/kernels/_ckernels.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
