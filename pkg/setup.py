import re
from pathlib import Path

from setuptools import find_packages, setup

init = Path(__file__).parent / 'csmexact' / '__init__.py'
version = re.search(r"__version__ = '([^']+)'", init.read_text()).group(1)

with open('requirements.txt') as f:
    requirements = f.read().split()

setup(name='csmexact',
      version=version,
      license='BSD',
      author='csmexact developers',
      packages=find_packages(exclude=['tests']),
      install_requires=requirements,
      entry_points={'console_scripts': ['csmexact=csmexact.cli:console_main']},
      description='Exact eigenfunctions of the B_N Calogero-Sutherland-Moser '
                  'model',
      )
