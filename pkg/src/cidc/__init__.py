"""Exact counting and certification of circuit double covers of cubic graphs."""

__version__ = "0.1.0"
