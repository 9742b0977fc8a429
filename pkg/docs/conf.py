# -*- coding: utf-8 -*-
#
# spsys documentation build configuration file.

import sys
import os
import sphinx_rtd_theme

sys.path.insert(0, os.path.abspath('..'))

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.mathjax',
    'numpydoc',
]

numpydoc_show_class_members = False

source_suffix = '.rst'
master_doc = 'index'

project = u'spsys'
copyright = u'2026, the spsys developers'
version = '2026.1'
release = '2026.1'

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
