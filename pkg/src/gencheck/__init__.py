"""Generalized-check belief propagation for quantum LDPC codes."""

__version__ = "0.1.0"
