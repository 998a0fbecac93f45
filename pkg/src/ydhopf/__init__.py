"""Exact computation with Yetter-Drinfeld Hopf algebras over K[Z2 x Z2] and their biproducts."""

__version__ = "0.1.0"
