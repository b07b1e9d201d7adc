import os

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

openmp = os.environ.get("RINGDNA_NO_OPENMP", "") in ("", "0")

extensions = [
    Extension(
        "ringdna._kernels",
        ["src/ringdna/_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"] + (["-fopenmp"] if openmp else []),
        extra_link_args=["-fopenmp"] if openmp else [],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
