from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# without Cython the package installs pure-Python only
ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "preempt_inbox.sched._runqueue",
                ["src/preempt_inbox/sched/_runqueue.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
