# -*- coding: utf-8 -*-
__version__ = "0.1.0"

__all__ = [
    "cli",
    "distributions",
    "edgeworth",
    "exceptions",
    "inference",
    "ingest",
    "planning",
    "report",
    "simulate",
    "storage",
    "utils",
]
