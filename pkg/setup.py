"""ipsuncert setup.py."""

import os
import re
from setuptools import setup, find_packages

PACKAGE_NAME = 'ipsuncert'
HERE = os.path.abspath(os.path.dirname(__file__))

with open(os.path.join(HERE, 'README.md')) as fp:
    README = fp.read()
with open(os.path.join(HERE, PACKAGE_NAME, '__init__.py')) as fp:
    VERSION = re.search("__version__ = '([^']+)'", fp.read()).group(1)

requires = [
    'numpy>=1.17',
    'pandas>=1.5',
    'python-dateutil>=2.1',
    'scipy>=1.4',
    'PyYAML>=5.1']

setup(name=PACKAGE_NAME,
      author='Bryce Boe',
      author_email='bboe@cs.ucsb.edu',
      classifiers=["Programming Language :: Python :: 3",
                   "Intended Audience :: Science/Research",
                   "Topic :: Scientific/Engineering"],
      description=('ipsuncert derives forecast-error statistical functions '
                   'of wind and solar power and of the power system'),
      entry_points="""\
      [console_scripts]
      {package} = {package}.cli:main
      """.format(package=PACKAGE_NAME),
      extras_require={'dev': ['flake8', 'hypothesis', 'pytest']},
      include_package_data=True,
      install_requires=requires,
      keywords='wind solar forecast uncertainty',
      license='Simplified BSD License',
      long_description=README,
      packages=find_packages(exclude=['tests']),
      python_requires='>=3.7',
      version=VERSION,
      zip_safe=False)
