"""Generalized nil-Coxeter algebras: normal forms, an independent quotient oracle,
and a finiteness classifier for generalized Coxeter matrices."""

__version__ = "0.1.0"
