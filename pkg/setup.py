import os

from setuptools import Extension, setup


def extensions():
    """Cython extension for the exact-scalar kernel; optional.

    The package runs unmodified on the pure-Python twin
    (``kkmfix._qcore_py``) when Cython or a C compiler is missing,
    or when KKMFIX_NO_EXT is set.
    """
    if os.environ.get("KKMFIX_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("kkmfix._qcore", ["src/kkmfix/_qcore.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions())
