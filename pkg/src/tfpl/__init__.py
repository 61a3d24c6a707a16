"""Exact enumeration of fully packed loops in a triangle and related objects."""

__version__ = "0.1.0"
