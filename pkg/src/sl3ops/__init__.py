"""Exact computer algebra for intertwining differential operators on SL~(3,R)."""

__version__ = "0.1.0"
