#!/usr/bin/env python
from setuptools import setup
import sys

__author__ = "Gavin Huttley"
__copyright__ = "Copyright 2024, Gavin Huttley"
__credits__ = ["Gavin Huttley"]
__license__ = "GPL"
__version__ = "0.1"
__maintainer__ = "Gavin Huttley"
__email__ = "Gavin.Huttley@anu.edu.au"
__status__ = "Development"

# Check Python version, no point installing if unsupported version inplace
if sys.version_info < (3, 8):
    py_version = ".".join([str(n) for n in sys.version_info])
    raise RuntimeError("Python-3.8 or greater is required, Python-%s used." % py_version)

short_description = "cube_paths"

# This ends up displayed by the installer
long_description = """cube_paths
Directed path spaces of precubical sets: exact d-paths, arc length and
naturalization, cube-chain categories and their nerve homology, spatiality
checks and a PV-program front end.
Version %s.
""" % __version__

setup(
    name="cube_paths",
    version=__version__,
    author="Gavin Huttley",
    author_email="gavin.huttley@anu.edu.au",
    description=short_description,
    long_description=long_description,
    platforms=["any"],
    license="GPL",
    keywords=["concurrency", "directed topology", "precubical sets",
              "homology", "path spaces"],
    classifiers=[
            "Development Status :: 3 - Alpha",
            "Intended Audience :: Science/Research",
            "License :: OSI Approved :: GNU General Public License (GPL)",
            "Programming Language :: Python :: 3",
            "Topic :: Scientific/Engineering :: Mathematics",
            "Topic :: Software Development :: Libraries :: Python Modules",
            "Operating System :: OS Independent",
            ],
    packages=['cube_paths'],
    python_requires=">=3.8",
    install_requires=[
              'numpy',
              'cogent3',
              'click',
              'scitrack',
              'networkx',
              'sympy',
          ],
    entry_points={
            'console_scripts': ['cube_paths=cube_paths.path_analysis:main',
                            ],
        }
    )
