"""Exact TMF-degree and generator calculations for 6d (1,0) theories on 4-manifolds."""

__version__ = "0.1.0"
