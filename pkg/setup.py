"""Optional compiled-kernel build.

The package is pure-Python by default; when Cython and a C compiler are
available, `python setup.py build_ext --inplace` compiles the geometry kernel
twin, which kernels.py picks up automatically at import.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/shapegpt/geom/_kernels_c.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
