from setuptools import setup

# The compiled polynomial kernel is optional: lmc.arith falls back to the
# pure-Python kernel when the extension is absent or fails to import.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(["src/lmc/_kernel_cy.pyx"], language_level="3")

setup(ext_modules=ext_modules)
