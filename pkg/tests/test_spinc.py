from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relsw.catalog import elliptic_surface, fiber_pair
from relsw.errors import PreconditionError, SchemaError
from relsw.spinc import (
    chern_multiply_by_sigma,
    degree_along_sigma,
    gysin_h2,
    log_chern_total,
    log_spinc_from_c1,
    log_spinc_from_twisting,
    pullback_equivalent,
    torsion_class_k,
    LogSpinc,
)
from relsw.topology import CircleBundle, build_pair

from conftest import diag_manifold


def _pair_with_m(genus, m):
    """Flat pair over a hyperbolic-summand manifold with prescribed m."""
    from relsw.topology import ClosedFourManifold

    x = ClosedFourManifold(
        name="H", euler=4, signature=0, b_plus=1, gram=((0, 1), (1, 0))
    )
    sigma = x.cls([1, 0])
    pair = build_pair(x, sigma, genus, b_plus_complement=1)
    c1L = x.cls([0, 2 * m])  # pairs to 2m with sigma
    return pair, log_spinc_from_c1(pair, c1L)


def test_degree_along_sigma_examples():
    _, s = _pair_with_m(3, 0)
    assert degree_along_sigma(s) == 2
    # MST case: deg(L_Sigma) = 2g-2, i.e. m = g-1
    for g in (1, 2, 5):
        _, s = _pair_with_m(g, g - 1)
        assert degree_along_sigma(s) == 0
    _, s = _pair_with_m(1, 2)
    assert degree_along_sigma(s) == -2
    _, s_neg = _pair_with_m(1, -2)
    assert degree_along_sigma(s_neg) == -2  # depends only on |m|


def test_pullback_equivalence_examples():
    assert pullback_equivalent(0, 3, 3)
    assert not pullback_equivalent(0, 1, 3)
    assert not pullback_equivalent(2, 5, 0)
    assert pullback_equivalent(2, 2, 0)


@given(
    l=st.integers(-6, 6),
    a=st.integers(-20, 20),
    b=st.integers(-20, 20),
    c=st.integers(-20, 20),
)
@settings(max_examples=300, deadline=None)
def test_pullback_equivalence_is_equivalence_relation(l, a, b, c):
    assert pullback_equivalent(a, a, l)
    assert pullback_equivalent(a, b, l) == pullback_equivalent(b, a, l)
    if pullback_equivalent(a, b, l) and pullback_equivalent(b, c, l):
        assert pullback_equivalent(a, c, l)


def test_gysin_examples():
    assert gysin_h2(CircleBundle(2, 3)) == (4, 3)
    assert gysin_h2(CircleBundle(1, 0)) == (3, 0)
    assert gysin_h2(CircleBundle(0, 1)) == (0, 1)


def test_log_chern_identity_and_roundtrip():
    x = diag_manifold([1, -1, -1], euler=4)
    pair = build_pair(x, x.cls([0, 1, 0]), genus=1, b_plus_complement=1)
    c1 = x.cls([1, 1, -1])
    c2 = 7
    c1_log, c2_log = log_chern_total(pair, c1, c2)
    assert c1_log.coords == (1, 0, -1)
    assert c2_log == c2 - c1.dot(pair.sigma_class) + pair.sigma_self
    # multiplying back by (1 + PD(Sigma)) recovers the input mod degree > 4
    back1, back2 = chern_multiply_by_sigma(pair, c1_log, c2_log)
    assert back1.coords == c1.coords and back2 == c2


def test_log_chern_zero_sigma_is_identity():
    x = diag_manifold([1, -1], euler=4)
    pair = build_pair(x, x.cls([0, 0]), genus=1, b_plus_complement=1)
    c1 = x.cls([1, 1])
    c1_log, c2_log = log_chern_total(pair, c1, 9)
    assert c1_log.coords == c1.coords and c2_log == 9


def test_log_chern_e2_symplectic():
    x, fiber, canonical = elliptic_surface(2)
    pair = build_pair(x, fiber, genus=1, b_plus_complement=2)
    # c1(TX) = -K = 0 for E(2); c(log) degree-2 part is -PD(F)
    c1_log, _ = log_chern_total(pair, -canonical, x.euler)
    assert c1_log.coords == tuple(-c for c in fiber.coords)


def test_c1_zero_case():
    x = diag_manifold([1, -1], euler=4)
    pair = build_pair(x, x.cls([1, 1]), genus=1, b_plus_complement=1)
    c1_log, c2_log = log_chern_total(pair, x.zero_class(), x.euler)
    assert c1_log.coords == tuple(-c for c in pair.sigma_class.coords)
    assert c2_log == x.euler + pair.sigma_self


def test_torsion_class_examples():
    assert torsion_class_k(4, 3) == 1
    assert torsion_class_k(0, 5) == 0
    assert torsion_class_k(-1, 3) == 2
    with pytest.raises(PreconditionError):
        torsion_class_k(1, 0)


def test_half_integer_m_is_kept_exact():
    from relsw.topology import ClosedFourManifold

    x = ClosedFourManifold("H", 4, 0, 1, ((0, 1), (1, 0)))
    pair = build_pair(x, x.cls([1, 0]), genus=2, b_plus_complement=1)
    s = log_spinc_from_c1(pair, x.cls([0, 1]))
    assert s.m == Fraction(1, 2)
    assert degree_along_sigma(s) == Fraction(1, 2)


def test_twisting_construction_matches_log_canonical():
    x, fiber, canonical = elliptic_surface(3)  # K = F
    pair = build_pair(x, fiber, genus=1, b_plus_complement=2)
    e = 2 * fiber
    s = log_spinc_from_twisting(pair, canonical, e)
    expected = -(canonical + pair.sigma_class) + 2 * e
    assert s.c1L.coords == expected.coords
    assert 2 * s.m == s.c1L.dot(pair.sigma_class)


def test_mismatched_m_rejected():
    pair, s = _pair_with_m(2, 1)
    with pytest.raises(SchemaError):
        LogSpinc(pair=pair, c1L=s.c1L, m=Fraction(5))
