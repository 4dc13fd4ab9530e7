from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/biunitary/_kernel/_scan.pyx",
        language_level=3,
    )
except ImportError:
    # Pure-Python fallback still works without the compiled kernel.
    ext_modules = []

setup(ext_modules=ext_modules)
