#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# reliab documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here.
sys.path.insert(0, os.path.abspath(".."))

# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
    "sphinx.ext.mathjax",
    "sphinx.ext.inheritance_diagram",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

# General information about the project.
project = "reliab"
copyright = "2024, reliab developers"
author = "reliab developers"

version = "0.1"
release = "0.1.0"

language = "en"
exclude_patterns = ["_build"]
pygments_style = "sphinx"
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = "pyramid"
htmlhelp_basename = "reliabdoc"

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}
latex_documents = [
    (master_doc, "reliab.tex", "reliab Documentation", author, "manual")
]

# -- Options for manual page output ---------------------------------------

man_pages = [(master_doc, "reliab", "reliab Documentation", [author], 1)]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
    (
        master_doc,
        "reliab",
        "reliab Documentation",
        author,
        "reliab",
        "Reliable two-sample tests for skewed A/B data.",
        "Miscellaneous",
    )
]
