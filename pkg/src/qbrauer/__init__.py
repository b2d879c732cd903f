"""Exact computational algebra for the q-Brauer algebra."""

__version__ = "0.1.0"
