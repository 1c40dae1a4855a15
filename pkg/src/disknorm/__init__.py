"""Pre-Schwarzian, Schwarzian and Bloch norms of disk mappings."""

__version__ = "0.1.0"
