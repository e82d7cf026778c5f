"""Spin^c bookkeeping on the logarithmic tangent bundle.

A structure is recorded by the Poincare dual of c1 of its characteristic
line bundle L together with the half-degree m = deg(L|_Sigma)/2 along the
surface.  m is kept in exact rational arithmetic so that an odd restriction
degree surfaces as a half-integer instead of a silent parity bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, SchemaError
from .topology import CircleBundle, HomologyClass, PairXSigma


@dataclass(frozen=True)
class LogSpinc:
    """Spin^c structure on TX(-log Sigma), via c1(L) and m = deg(L_Sigma)/2."""

    pair: PairXSigma
    c1L: HomologyClass
    m: Fraction
    twisting_class: HomologyClass = None

    def __post_init__(self):
        if self.c1L.manifold != self.pair.manifold:
            raise SchemaError("c1(L) lives in a different lattice")
        object.__setattr__(self, "m", Fraction(self.m))
        if 2 * self.m != self.c1L.dot(self.pair.sigma_class):
            raise SchemaError(
                f"2m = {2 * self.m} != c1(L).Sigma = "
                f"{self.c1L.dot(self.pair.sigma_class)}"
            )

    @property
    def m_is_integer(self) -> bool:
        return self.m.denominator == 1

    @property
    def degree_E_sigma(self) -> Fraction:
        """deg(E|_Sigma) = m + (g - 1) for the twisted relatively canonical model."""
        return self.m + (self.pair.genus - 1)


def log_spinc_from_c1(pair: PairXSigma, c1L: HomologyClass) -> LogSpinc:
    """Build a structure from its characteristic class; m is derived."""
    return LogSpinc(pair=pair, c1L=c1L, m=Fraction(c1L.dot(pair.sigma_class), 2))


def log_spinc_from_twisting(
    pair: PairXSigma, canonical_class: HomologyClass, e: HomologyClass
) -> LogSpinc:
    """Twist the relatively canonical structure by a line-bundle class e.

    The relatively canonical structure on TX(-log Sigma) has characteristic
    class -(K_X + Sigma); twisting by e gives c1(L) = -(K_X + Sigma) + 2e.
    K_X is user-supplied.
    """
    c1L = -(canonical_class + pair.sigma_class) + 2 * e
    s = log_spinc_from_c1(pair, c1L)
    return LogSpinc(pair=pair, c1L=c1L, m=s.m, twisting_class=e)


def degree_along_sigma(s: LogSpinc):
    """d(s) = (g - 1) - |m|.  Negative values signal empty moduli.

    Returns an int whenever m is an integer, else an exact Fraction.
    """
    d = (s.pair.genus - 1) - abs(s.m)
    return int(d) if d.denominator == 1 else d


def pullback_equivalent(d1: int, d2: int, l: int) -> bool:
    """Degrees pull back to isomorphic line bundles on Y iff equal mod l (l != 0)."""
    if l == 0:
        return d1 == d2
    return (d1 - d2) % l == 0


def gysin_h2(y: CircleBundle) -> tuple[int, int]:
    """(free rank, torsion order) of H^2(Y; Z) from the Gysin sequence.

    For l != 0: Z^{2g} + Z/lZ with torsion generated by the pullback of the
    volume form; for the trivial bundle: free of rank 2g + 1.
    """
    if y.degree == 0:
        return (2 * y.base_genus + 1, 0)
    return (2 * y.base_genus, abs(y.degree))


def log_chern_total(
    pair: PairXSigma, c1TX: HomologyClass, c2TX: int
) -> tuple[HomologyClass, int]:
    """Total Chern class of TX(-log Sigma): the quotient c(TX)/(1 + PD(Sigma)).

    Truncated in degree <= 4:
      c1(log) = c1(TX) - PD(Sigma),
      c2(log) = c2(TX) - c1(TX).Sigma + Sigma.Sigma.
    """
    if c1TX.manifold != pair.manifold:
        raise SchemaError("c1(TX) lives in a different lattice")
    sig = pair.sigma_class
    c1_log = c1TX - sig
    c2_log = c2TX - c1TX.dot(sig) + pair.sigma_self
    return c1_log, c2_log


def chern_multiply_by_sigma(
    pair: PairXSigma, c1: HomologyClass, c2: int
) -> tuple[HomologyClass, int]:
    """Formal product (1 + c1 + c2)(1 + PD(Sigma)) truncated in degree <= 4."""
    sig = pair.sigma_class
    return c1 + sig, c2 + c1.dot(sig)


def torsion_class_k(m_representative: int, l: int) -> int:
    """Residue of m in H^2_tor(Y) = Z/lZ, normalised into [0, |l|)."""
    if l == 0:
        raise PreconditionError("torsion class undefined for a trivial bundle (l=0)")
    return m_representative % abs(l)
