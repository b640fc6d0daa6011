"""Sphinx configuration."""

import sys

import tensorhn

# Work around Sphinx bug related to large and highly-nested source files
sys.setrecursionlimit(2000)

# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx_click.ext",
    "sphinx_automodapi.automodapi",
    "sphinx_automodapi.smart_resolver",
]

source_suffix = ".rst"
master_doc = "index"

project = "tensorhn"
copyright = "2026 tensorhn developers"
author = "tensorhn developers"

version = tensorhn.__version__
release = version

exclude_patterns = ["_build", "README.rst"]

pygments_style = "sphinx"

# The reST default role cross-links Python (used for this markup: `text`)
default_role = "py:obj"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
}

linkcheck_retries = 2

# -- Options for HTML output ----------------------------------------------

html_theme = "alabaster"
html_theme_options = {"description": "Exact stability of rank two tensors"}
html_short_title = f"{project}"
html_static_path: list = []
html_show_sourcelink = False
html_copy_source = False

# API Reference ==============================================================

napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_include_init_with_doc = False
napoleon_include_private_with_doc = False
napoleon_include_special_with_doc = True
napoleon_use_param = True
napoleon_use_rtype = True

automodapi_toctreedirnm = "api"
automodsumm_inherited_members = True
autodoc_inherit_docstrings = True
autoclass_content = "class"
