import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("NMMG_NO_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("nmmg._kernels", ["src/nmmg/_kernels.pyx"], include_dirs=[np.get_include()])],
        language_level="3",
    )

setup(ext_modules=ext_modules)
