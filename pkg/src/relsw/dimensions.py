"""Exact evaluation of the dimension and xi-invariant formulas.

Every operation here is an identity in integers/rationals; floating point is
forbidden in this module.  dim_main evaluates the cylindrical-end dimension
both through the closed topological formula and through the xi-invariant
route (complement characteristic numbers + APS correction) and asserts that
the two agree; a mismatch indicates corrupted input and raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisError, NonCharacteristicError, PreconditionError
from .spinc import LogSpinc, degree_along_sigma
from .topology import ClosedFourManifold, HomologyClass, PairXSigma


@dataclass(frozen=True)
class DimensionReport:
    """All dimension data attached to one spin^c structure on a pair."""

    d_main: int
    d_adapted: int
    d_reducible: int | None
    xi_compact: Fraction
    xi_adapted: Fraction
    route_check: bool


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonCharacteristicError(f"{what} = {x} is not an integer")
    return int(x)


def xi_compact(s: LogSpinc) -> Fraction:
    """APS correction for monopoles limiting on an irreducible component.

    deg(E_Sigma) + (Sigma.Sigma - 3 sign(Sigma.Sigma))/4 with
    deg(E_Sigma) = m + (g-1); the signed-m form extends the deg(L_Sigma) <= 0
    computation to the Serre-dual branch.
    """
    pair = s.pair
    return s.degree_E_sigma + Fraction(pair.sigma_self - 3 * pair.epsilon, 4)


def xi_adapted(pair: PairXSigma) -> Fraction:
    """APS correction in the adapted (nu-perturbed) case; twist-independent."""
    return Fraction(pair.sigma_self - 3 * pair.epsilon, 4)


def _dim_main_routes(pair: PairXSigma, s: LogSpinc) -> tuple[Fraction, Fraction]:
    x = pair.manifold
    c1 = s.c1L
    numerator = (
        (c1 + pair.sigma_class).self_intersection
        - 2 * x.euler
        - 3 * x.signature
    )
    topological = Fraction(numerator, 4)
    xi_route = (
        Fraction(
            c1.self_intersection
            - 2 * pair.euler_complement
            - 3 * pair.signature_complement,
            4,
        )
        + xi_compact(s)
    )
    return topological, xi_route


def dim_main(pair: PairXSigma, s: LogSpinc) -> int:
    """Expected dimension ((c1(L) + Sigma)^2 - 2 chi(X) - 3 sigma(X)) / 4.

    Cross-checked against the complement + xi reconstruction; divisibility
    by 4 is required of the numerator.
    """
    topological, xi_route = _dim_main_routes(pair, s)
    d = _as_int(topological, "non-characteristic input: dimension numerator/4")
    if topological != xi_route:
        raise AssertionError(
            f"dimension route mismatch: topological {topological}, "
            f"xi-route {xi_route}"
        )
    return d


def dim_adapted(pair: PairXSigma, s: LogSpinc) -> int:
    """Adapted-perturbation dimension: dim_main - d(s)."""
    d = dim_main(pair, s)
    ds = degree_along_sigma(s)
    if isinstance(ds, Fraction):
        raise NonCharacteristicError(
            f"d(s) = {ds} is not an integer (odd degree along Sigma)"
        )
    return d - ds


def dim_reducible(pair: PairXSigma, s_k: LogSpinc) -> int:
    """Dimension of the component limiting on the reducible torus.

    Topological form: base + (g - 1/2) + (Sigma.Sigma - eps)/4 - k*eps where
    base = (c1(L)^2 - 2 chi(X-Sigma) - 3 sigma(X-Sigma))/4 and k in (0, |l|)
    is the torsion residue of m.  Requires l != 0 and (g-1) != 0 mod l; the
    excluded case has a different formula not provided by the theory.
    """
    l = -pair.sigma_self
    if l == 0:
        raise HypothesisError("reducible dimension requires Sigma.Sigma != 0")
    if (pair.genus - 1) % abs(l) == 0:
        raise HypothesisError(
            f"(g-1) = {pair.genus - 1} is 0 mod l = {l}: case unsupported"
        )
    if not s_k.m_is_integer:
        raise HypothesisError("torsion class requires integer m")
    k = int(s_k.m) % abs(l)
    if k == 0:
        raise HypothesisError("torsion residue k = 0: class is not of Lemma type")
    eps = pair.epsilon
    base = Fraction(
        s_k.c1L.self_intersection
        - 2 * pair.euler_complement
        - 3 * pair.signature_complement,
        4,
    )
    value = (
        base
        + Fraction(2 * pair.genus - 1, 2)
        + Fraction(pair.sigma_self - eps, 4)
        - k * eps
    )
    return _as_int(value, "reducible dimension")


def dim_tunneling(
    a: int, b_plus: int, b_minus: int, g: int, l: int, adapted: bool
) -> int:
    """Expected dimension of the cylinder moduli for class a*Sigma_- + b_+ F.

    Unperturbed: (a+1)(b_- + b_+) + 2a(1-g); adapted: a(b_- + b_+ + 2(1-g)).
    The homology constraint b_- - b_+ = a*l must hold.
    """
    if b_minus - b_plus != a * l:
        raise PreconditionError(
            f"homology constraint violated: b_- - b_+ = {b_minus - b_plus} "
            f"!= a*l = {a * l}"
        )
    if adapted:
        return a * (b_minus + b_plus + 2 * (1 - g))
    return (a + 1) * (b_minus + b_plus) + 2 * a * (1 - g)


def dim_classic_closed(x: ClosedFourManifold, c1L: HomologyClass) -> int:
    """Classic closed-manifold dimension (c1(L)^2 - 2 chi - 3 sigma)/4."""
    numerator = c1L.self_intersection - 2 * x.euler - 3 * x.signature
    return _as_int(Fraction(numerator, 4), "non-characteristic input: closed dimension")


def wall_crossing_delta(d: int) -> int:
    """Wall-crossing jump -(-1)^(d/2) for b+ = 1 chambers; d must be even."""
    if d % 2 != 0:
        raise PreconditionError(f"wall crossing needs even dimension, got {d}")
    return -((-1) ** (d // 2))


def dimension_report(pair: PairXSigma, s: LogSpinc) -> DimensionReport:
    """Evaluate every applicable formula for one structure."""
    topological, xi_route = _dim_main_routes(pair, s)
    d_main_v = _as_int(topological, "non-characteristic input: dimension numerator/4")
    route_ok = topological == xi_route
    ds = degree_along_sigma(s)
    if isinstance(ds, Fraction):
        raise NonCharacteristicError(
            f"d(s) = {ds} is not an integer (odd degree along Sigma)"
        )
    d_adapted_v = d_main_v - ds
    try:
        d_red = dim_reducible(pair, s)
    except PreconditionError:
        d_red = None
    return DimensionReport(
        d_main=d_main_v,
        d_adapted=d_adapted_v,
        d_reducible=d_red,
        xi_compact=xi_compact(s),
        xi_adapted=xi_adapted(pair),
        route_check=route_ok,
    )
