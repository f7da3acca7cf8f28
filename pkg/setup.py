"""Build the optional compiled oracle kernel.

If Cython or a C compiler is unavailable the package installs without it and
``cdyck.kernel`` falls back to the pure-Python sweep.
"""
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("cdyck._kernel", ["src/cdyck/_kernel.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: compiled kernel not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); using pure Python")


setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
