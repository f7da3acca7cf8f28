"""Exact enumeration of statistics on colored Dyck paths."""
__version__ = "0.1.0"
