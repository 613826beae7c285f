import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

EIGEN = os.environ.get("EIGEN_INCLUDE_DIR", "/usr/include/eigen3")

ext = Pybind11Extension(
    "idealpoints",
    [
        "src/triangulation.cpp",
        "src/deformation.cpp",
        "src/sl2.cpp",
        "src/ptb.cpp",
        "src/report.cpp",
        "python/bindings.cpp",
    ],
    include_dirs=["include", "vendor", EIGEN],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
