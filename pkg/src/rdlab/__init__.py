"""Exact search and 3-adic lifting tools for the four-distance problem."""

__version__ = "0.1.0"
