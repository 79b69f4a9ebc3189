"""Build script: compiles the optional F_p kernel extension.

The package works without the extension (a pure-Python twin of the kernel
is selected at import time), so a failed compile is downgraded to a warning.
"""

from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "normalgeom._fpkernel.core",
                ["src/normalgeom/_fpkernel/core.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
