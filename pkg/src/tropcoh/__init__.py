"""Exact tropical (p, q)-cohomology of weighted polyhedral complexes in tropical toric varieties."""

__version__ = "0.1.0"
