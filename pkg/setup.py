"""Build hook for the optional compiled product kernel.

If Cython or a C compiler is unavailable the package still installs and
runs on the pure-Python kernel.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("bsskein._ckernels", ["src/bsskein/_ckernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
    )
except Exception:  # pragma: no cover - no Cython or the .pyx fails to translate
    ext_modules = []

setup(ext_modules=ext_modules)
