"""Finite inverse semigroups, partial actions and their semidirect products."""

__version__ = "1.0.0"
