"""Genus bounds and embeddings for pancake-type Cayley graphs."""

__version__ = "0.1.0"
