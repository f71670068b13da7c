"""Characteristic and resonance varieties of complex hyperplane arrangements."""

__version__ = "0.1.0"
