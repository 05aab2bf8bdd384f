"""Bivariate Koornwinder polynomials and matrix Pearson equations in exact arithmetic."""

__version__ = "0.1.0"
