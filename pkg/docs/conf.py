"""Configuration file for the Sphinx documentation builder."""

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

import swallowtail  # noqa: E402

version = swallowtail.__version__
release = swallowtail.__version__

# -- Project information -----------------------------------------------------

project = "swallowtail"
copyright = "The swallowtail developers (BSD-3 License)"
author = "The swallowtail developers"

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autosectionlabel",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "numpydoc",
    "sphinx_design",
    "sphinx_copybutton",
    "sphinx_remove_toctrees",
    "myst_parser",
]

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

source_suffix = {
    ".rst": "restructuredtext",
    ".md": "markdown",
}

master_doc = "index"

# auto doc/summary

autosummary_generate = True

autodoc_default_options = {
    "members": True,
    "inherited-members": True,
    "member-order": "bysource",
}

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "mpmath": ("https://mpmath.org/doc/current/", None),
    "sympy": ("https://docs.sympy.org/latest/", None),
}

# numpydoc

numpydoc_show_class_members = True
numpydoc_class_members_toctree = False

numpydoc_validation_checks = {"all"}

# sphinx-copybutton

copybutton_exclude = ".linenos, .gp, .go"

# sphinx-remove-toctrees configuration

remove_from_toctrees = ["auto_generated/*"]

# MyST Parser configuration

suppress_warnings = ["myst.mathjax"]

myst_enable_extensions = ["colon_fence", "dollarmath"]

myst_heading_anchors = 2

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"

html_show_sourcelink = False

html_theme_options = {
    "sidebar_hide_name": False,
}
