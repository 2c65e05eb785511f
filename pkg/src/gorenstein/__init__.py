"""Artinian Gorenstein algebras: nil-polynomials, inverse systems and
isomorphism testing by linear equivalence of nil-polynomial hypersurfaces."""

__version__ = "0.1.0"
