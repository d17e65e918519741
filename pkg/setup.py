from setuptools import setup, Extension
from Cython.Build import cythonize

# -ffp-contract=off keeps the compiled pivot arithmetic bit-identical to the
# pure-NumPy fallback (no FMA contraction).
ext = Extension(
    "frontier_cone._simplex",
    ["src/frontier_cone/_simplex.pyx"],
    extra_compile_args=["-O3", "-ffp-contract=off"],
)

setup(ext_modules=cythonize(ext, language_level="3"))
