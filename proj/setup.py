import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "layerctx._layerctx",
    sources=["python/bindings.cpp"] + sorted(glob.glob("src/*.cpp")),
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(
    packages=["layerctx"],
    package_dir={"layerctx": "python/layerctx"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)
