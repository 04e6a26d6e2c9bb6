"""Bound calculator and machine verifier for Ramsey upper densities of
infinite graph factors: exact independence invariants, closed-form bound
brackets, exhaustive coloring searches with certificates, and numerical
exploration of the underlying variational function."""

__version__ = "0.1.0"
