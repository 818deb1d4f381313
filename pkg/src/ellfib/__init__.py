"""Weierstrass models of elliptic fibrations over a surface chart: discriminants,
Tate classification, Kodaira fibre contractions and weighted blow-ups."""

__version__ = "0.1.0"
