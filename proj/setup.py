import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        package_dir = ext_path.parent
        package_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DCHROMA_BUILD_TESTS=OFF",
                "-DCHROMA_BUILD_CLI=OFF",
                "-DCHROMA_BUILD_PYTHON=ON",
                f"-DCHROMA_PYTHON_OUTPUT_DIR={package_dir}",
                f"-DPython3_EXECUTABLE={sys.executable}",
                f"-DPYBIND11_PYTHON_EXECUTABLE_LAST={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "--parallel"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("chromamst._core")],
    cmdclass={"build_ext": CMakeBuild},
)
