"""Eigenspace, Hodge-number and infinitesimal Torelli computations for
abelian covers of curves and surfaces isogenous to a product."""

__version__ = "0.1.0"
