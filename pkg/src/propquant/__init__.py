"""Exact symbolic tools for universal quantization of Lie bialgebras in PROPs."""

__version__ = "0.1.0"
