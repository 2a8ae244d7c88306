"""Smooth semilinear representations of infinite symmetric groups, at finite truncation."""
__version__ = "0.1.0"
