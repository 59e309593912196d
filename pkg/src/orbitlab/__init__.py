"""Exact and numerical experiments on semisimple group orbits."""

__version__ = "0.1.0"
