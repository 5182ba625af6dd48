from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pipeflow._kernels._fast",
                ["src/pipeflow/_kernels/_fast.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython: install with the pure NumPy kernels only.
    ext_modules = []

setup(ext_modules=ext_modules)
