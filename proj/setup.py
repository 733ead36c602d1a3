from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "liouville._core",
    sources=[
        "bindings/module.cpp",
        "src/sieve.cpp",
        "src/patterns.cpp",
        "src/averages.cpp",
        "src/normality.cpp",
        "src/selftest.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
