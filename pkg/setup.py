"""Build script for the compiled gate-kernel extension.

The extension is optional: if Cython (or a C compiler) is unavailable the
package installs anyway and falls back to the pure-numpy kernels at import
time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [Extension("vqclf._gatekernels", ["src/vqclf/_gatekernels.pyx"])],
        language_level=3,
    )
else:
    extensions = []

setup(ext_modules=extensions)
