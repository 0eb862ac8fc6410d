from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install still works: the engine falls back to the
    # interpreted kernel when sdramsey._kernel is missing.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("sdramsey._kernel", ["src/sdramsey/_kernel.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
