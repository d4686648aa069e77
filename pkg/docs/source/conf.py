# -*- coding: utf-8 -*-
#
# datalad_hamiltonian documentation build configuration file
#
# Only settings that differ from the sphinx defaults are listed.

import os
import sys
from os.path import (
    abspath,
    dirname,
    join as opj,
)

# make the package importable without installation
sys.path.insert(0, abspath(opj(dirname(__file__), os.pardir, os.pardir)))

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
]

autosummary_generate = True
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'DataLad Hamiltonian engineering'
copyright = u'2021-, DataLad team'
author = u'DataLad team'

language = None
exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_split_index = True
html_show_sourcelink = False
htmlhelp_basename = 'datalad_hamiltoniandoc'

latex_documents = [
  (master_doc, 'datalad_hamiltonian.tex', u'datalad_hamiltonian Documentation',
   u'DataLad team', 'manual'),
]

man_pages = [
    (master_doc, 'datalad-hamiltonian', u'datalad_hamiltonian Documentation',
     [author], 1)
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'scipy': ('https://docs.scipy.org/doc/scipy', None),
}
