"""Reflection-group trick toolkit: simplicial complexes, right-angled Coxeter
groups and the basic construction, with homological certificates."""

__version__ = "0.1.0"
