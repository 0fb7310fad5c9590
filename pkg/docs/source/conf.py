#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# csmexact documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.
import datetime
import os
import sys

import sphinx_rtd_theme

module_path = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                           '../../')
sys.path.insert(0, module_path)

import csmexact  # noqa: E402

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.todo',
              'sphinx.ext.autosummary',
              'sphinx.ext.napoleon',
              'sphinx.ext.mathjax',
              'sphinx.ext.autosectionlabel',
              'm2r',
              ]

autosummary_generate = True
source_suffix = ['.rst', '.md']
master_doc = 'index'

project = 'csmexact'
year = datetime.datetime.now().year
copyright = '{}, csmexact developers'.format(year)
author = 'csmexact developers'

# The short X.Y version.
version = csmexact.__version__
# The full version, including alpha/beta/rc tags.
release = csmexact.__version__

language = None
exclude_patterns = []
default_role = 'any'
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
htmlhelp_basename = 'csmexactdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}
latex_documents = [
    (master_doc, 'csmexact.tex', 'csmexact Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'csmexact', 'csmexact Documentation',
     [author], 1)
]
