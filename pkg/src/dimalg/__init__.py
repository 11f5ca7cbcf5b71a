"""Dimension algebra of graded groups: Bockstein functions and their calculus."""

__version__ = "0.1.0"
