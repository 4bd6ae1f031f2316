from setuptools import setup, Extension
from Cython.Build import cythonize

ext_modules = cythonize(
    [
        Extension(
            "einstein4._kernels._grid_cy",
            ["src/einstein4/_kernels/_grid_cy.pyx"],
        )
    ],
    language_level=3,
)

setup(ext_modules=ext_modules)
