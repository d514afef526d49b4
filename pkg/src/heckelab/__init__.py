"""Exact arithmetic for Hecke operators on P^1 and the quantum algebras they generate."""

__version__ = "0.1.0"
