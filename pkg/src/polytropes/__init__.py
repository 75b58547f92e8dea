"""Exact enumeration of combinatorial types of polytropes."""

__version__ = "0.1.0"
