"""Computational laboratory for linear relations among Ohno sums of multiple zeta values."""

__version__ = "0.1.0"
