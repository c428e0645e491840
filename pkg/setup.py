import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; propagate.py falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "crwscatter._kernels",
                ["src/crwscatter/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3", "-fcx-limited-range"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
