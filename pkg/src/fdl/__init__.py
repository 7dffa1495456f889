"""Hybrid knowledge-graph + keyword search engine for finding doctors and locations."""

__version__ = "0.1.0"
