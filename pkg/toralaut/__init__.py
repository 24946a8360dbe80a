# toralaut/__init__.py

"""Automorphisms of toral varieties: H(X), the torus splitting and GAff(M, h)."""

__version__ = "0.1.0"
