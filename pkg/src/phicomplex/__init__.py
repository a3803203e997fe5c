"""Exterior calculus of the complex structure on 2-forms over R^4, with
Maxwell, conformal-symmetry and extended-electrodynamics verifiers."""

__version__ = "0.1.0"
