"""Computational toolkit for relative Seiberg-Witten data of a pair (X, Sigma).

Subpackages cover exact dimension/xi-invariant arithmetic, classification of
3-dimensional monopole moduli components on circle bundles, a flat-torus
vortex solver, a finite-dimensional spectral-flow laboratory, and the
combinatorics of the fiber-sum formula.
"""

__version__ = "0.1.0"
