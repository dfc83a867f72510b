"""Exact Schubert calculus and representation rings of Levi subgroups of classical groups."""

__version__ = "0.1.0"
