"""Finite overcategories: overlimits, overadjoints, overmonads and free overmonoids,
each checked against brute-force oracles."""

__version__ = "0.1.0"
