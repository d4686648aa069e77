#!/usr/bin/env python

import os.path as op
from setuptools import setup
from setuptools import find_packages


def get_version():
    """Load version of the extension from version.py without entailing any imports
    """
    with open(op.join(op.dirname(__file__),
                      'datalad_hamiltonian',
                      'version.py')) as f:
        version_lines = list(filter(lambda x: x.startswith('__version__'), f))
    assert (len(version_lines) == 1)
    return version_lines[0].split('=')[1].strip(" '\"\t\n")


README = op.join(op.dirname(__file__), 'README.md')
with open(README) as f:
    long_description = f.read()


setup(
    name="datalad_hamiltonian",
    author="The DataLad Team and Contributors",
    author_email="team@datalad.org",
    version=get_version(),
    description="DataLad extension for Hamiltonian engineering of "
                "parametrically driven superconducting circuits",
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=[pkg for pkg in find_packages('.') if pkg.startswith('datalad')],
    python_requires='>=3.7',
    install_requires=[
        'datalad>=0.14',
        'numpy>=1.17',
        'scipy>=1.4',
        'pyyaml',
        'simplejson',
    ],
    extras_require={
        'devel': [
            'nose',
            'coverage',
        ],
        'docs': [
            'sphinx>=1.7.8',
            'sphinx-rtd-theme',
        ],
    },
    entry_points={
        'datalad.extensions': [
            'hamiltonian=datalad_hamiltonian:command_suite',
        ],
        'datalad.tests': [
            'hamiltonian=datalad_hamiltonian'
        ],
    },
)
