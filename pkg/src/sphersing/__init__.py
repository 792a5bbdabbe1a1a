"""Singularities of spherical embeddings from colored fans."""

__version__ = "0.1.0"
