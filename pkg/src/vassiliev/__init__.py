"""Vassiliev knot invariants from configuration-space integrals and signed counts."""

__version__ = "0.1.0"
