"""Ramanujan-type congruences for half-integral weight modular forms modulo l."""

__version__ = "0.1.0"
