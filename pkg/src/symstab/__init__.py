"""Conformal stability of symmetric spaces for the functional int |R|^p dv."""

__version__ = "0.1.0"
