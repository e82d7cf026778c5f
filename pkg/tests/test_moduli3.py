import itertools
import math
from fractions import Fraction

import pytest

from relsw.errors import PreconditionError, SchemaError
from relsw.moduli3 import (
    IRREDUCIBLE,
    REDUCIBLE_EMPTY,
    REDUCIBLE_T2G,
    REDUCIBLE_T2G1,
    ModuliComponent3,
    NuZeroSet,
    PullbackClassOnY,
    TunnelingClass,
    compactness_certificate,
    complement_divisor,
    csd_level,
    enumerate_components,
    perturbed_components,
    stratum_codimension,
    tunneling_admissible,
    tunneling_moduli,
)
from relsw.topology import CircleBundle, build_pair

from conftest import diag_manifold
from oracles import classify_components_bruteforce, subsets_bruteforce


def _to_oracle_form(components):
    out = []
    for c in components:
        if c.kind == IRREDUCIBLE:
            out.append(("irr", c.m, c.d))
        elif c.kind == REDUCIBLE_T2G:
            out.append(("red", "T2g", c.theta_flag))
        elif c.kind == REDUCIBLE_T2G1:
            out.append(("red", "T2g1", None))
        else:
            out.append(("red", "empty", None))
    return sorted(out, key=str)


def test_g2_l1_example():
    y = CircleBundle(base_genus=2, degree=1)
    comps = enumerate_components(y, PullbackClassOnY(y, 0))
    kinds = sorted(c.kind for c in comps)
    assert kinds == [IRREDUCIBLE, IRREDUCIBLE, REDUCIBLE_T2G]
    irr = sorted((c.m, c.d, c.model) for c in comps if c.kind == IRREDUCIBLE)
    assert irr == [(-1, 0, "pt"), (1, 0, "pt")]


def test_trivial_bundle_cases():
    y = CircleBundle(base_genus=1, degree=0)
    comps = enumerate_components(y, PullbackClassOnY(y, 0))
    assert [c.kind for c in comps] == [REDUCIBLE_T2G1]
    comps5 = enumerate_components(y, PullbackClassOnY(y, 5))
    assert [c.kind for c in comps5] == [REDUCIBLE_EMPTY]


def test_never_emits_inadmissible_m():
    for g in range(0, 6):
        for l in range(-6, 7):
            residues = range(abs(l)) if l != 0 else range(-2, 2 * g + 2)
            for r in residues:
                y = CircleBundle(base_genus=g, degree=l)
                for c in enumerate_components(y, PullbackClassOnY(y, r)):
                    if c.kind == IRREDUCIBLE:
                        assert c.m != 0 and abs(c.m) <= g - 1


def test_matches_bruteforce_classifier():
    for g in range(0, 6):
        for l in range(-6, 7):
            residues = range(abs(l)) if l != 0 else range(-1, 2 * g + 1)
            for r in residues:
                y = CircleBundle(base_genus=g, degree=l)
                got = _to_oracle_form(enumerate_components(y, PullbackClassOnY(y, r)))
                want = classify_components_bruteforce(g, l, r)
                assert got == want, (g, l, r)


def test_perturbed_component_counts():
    z = NuZeroSet(genus=3, zeros=(("p1", 1), ("p2", 1), ("p3", 1), ("p4", 1)))
    subs = list(perturbed_components(z, 2))
    assert len(subs) == 6
    assert len(list(perturbed_components(z, 0))) == 1
    z2 = NuZeroSet(genus=2, zeros=(("p", 2),))
    assert list(perturbed_components(z2, 1)) == [(("p", 1),)]
    with pytest.raises(PreconditionError):
        list(perturbed_components(z, 7))


def test_perturbed_matches_subset_oracle():
    z = NuZeroSet(genus=3, zeros=(("a", 2), ("b", 1), ("c", 1)))
    expanded = ["a", "a", "b", "c"]
    for d in range(0, 5):
        got = {
            tuple(sorted(sum(([lab] * k for lab, k in div), [])))
            for div in perturbed_components(z, d)
        }
        assert got == subsets_bruteforce(expanded, d)


def test_complement_bijection():
    z = NuZeroSet(genus=3, zeros=(("a", 2), ("b", 1), ("c", 1)))
    for d in range(0, 5):
        divs = list(perturbed_components(z, d))
        comps = [complement_divisor(z, div) for div in divs]
        assert sorted(comps) == sorted(perturbed_components(z, z.total - d))


def test_csd_levels():
    assert csd_level(1, 2) == 2
    assert csd_level(0, 5) == 0
    assert csd_level(1, -2) == -2
    assert csd_level(Fraction(1, 2), 1) == 1
    with pytest.raises(PreconditionError):
        csd_level(1, 0)


def test_csd_extremality_of_reducible():
    for g, l, r in ((3, 2, 1), (4, -3, 2), (2, 5, 0)):
        y = CircleBundle(base_genus=g, degree=l)
        comps = enumerate_components(y, PullbackClassOnY(y, r))
        red = [c for c in comps if c.is_reducible]
        irr = [c for c in comps if not c.is_reducible]
        assert len(red) == 1 and red[0].csd_level == 0
        for c in irr:
            if l > 0:
                assert c.csd_level > 0
            else:
                assert c.csd_level < 0


def test_tunneling_admissibility_partial_order():
    y = CircleBundle(base_genus=4, degree=2)
    comps = enumerate_components(y, PullbackClassOnY(y, 0))
    for a in comps:
        assert not tunneling_admissible(a, a)  # irreflexive
        for b in comps:
            for c in comps:
                if tunneling_admissible(a, b) and tunneling_admissible(b, c):
                    assert tunneling_admissible(a, c)
    reducible = next(c for c in comps if c.is_reducible)
    m1 = next(c for c in comps if c.m == 1)
    assert tunneling_admissible(reducible, m1)  # level 0 < 4/2

    y_neg = CircleBundle(base_genus=4, degree=-2)
    comps_neg = enumerate_components(y_neg, PullbackClassOnY(y_neg, 0))
    red_neg = next(c for c in comps_neg if c.is_reducible)
    m1_neg = next(c for c in comps_neg if c.m == 1)
    assert not tunneling_admissible(red_neg, m1_neg)

    equal = ModuliComponent3(kind=IRREDUCIBLE, m=1, d=0, csd_level=Fraction(2))
    assert not tunneling_admissible(equal, equal)


def test_stratum_codimension():
    assert stratum_codimension(1, False, -1) == 2
    assert stratum_codimension(1, True, -1) == 3
    assert stratum_codimension(2, False, 5) == 4
    for k in range(1, 6):
        assert stratum_codimension(k, False, 3) >= 2
        assert stratum_codimension(k, True, -2) == 2 * k + 1
    with pytest.raises(PreconditionError):
        stratum_codimension(0, False, -1)
    with pytest.raises(PreconditionError):
        stratum_codimension(1, True, 2)
    with pytest.raises(PreconditionError):
        stratum_codimension(1, True, 0)


def test_compactness_certificate():
    cases = [
        ([1, -1], [1, 0], 1, 1, True),   # g=1, Sigma^2 = 1 > 0
        ([1, 1, -1], [1, 1, 0], 2, 2, False),  # Sigma^2 = 2 = 2g-2
        ([1, 1, 1, -1], [1, 1, 1, 0], 3, 2, True),  # Sigma^2 = 3 > 2
    ]
    for signs, vec, sq, genus, expected in cases:
        x = diag_manifold(signs, euler=2)
        sigma = x.cls(vec)
        assert sigma.self_intersection == sq
        pair = build_pair(x, sigma, genus, b_plus_complement=0)
        assert compactness_certificate(pair) is expected


def test_tunneling_moduli_cases():
    z = NuZeroSet(genus=3, zeros=(("p1", 1), ("p2", 1), ("p3", 1), ("p4", 1)))
    # adapted, a != 0: empty
    desc = tunneling_moduli(TunnelingClass(1, 0, 1, 2, 1), adapted=True)
    assert desc.empty
    # adapted, a = 0, b = 2, 4 simple zeros: S_2(nu), 6 elements
    desc = tunneling_moduli(TunnelingClass(0, 2, 2, 3, 1), adapted=True, zeros=z)
    assert not desc.empty and desc.model == "S_2(nu)" and desc.cardinality == 6
    assert desc.dimension == 0
    # unperturbed, a = 0, b = 1: Sym^1 = Sigma, dimension 2
    desc = tunneling_moduli(TunnelingClass(0, 1, 1, 2, 3), adapted=False)
    assert not desc.empty and desc.model == "Sym^1(Sigma)" and desc.dimension == 2
    # unperturbed out of degree range: empty
    desc = tunneling_moduli(TunnelingClass(0, 5, 5, 2, 1), adapted=False)
    assert desc.empty
    # unperturbed a != 0 carries holomorphic data
    desc = tunneling_moduli(TunnelingClass(1, 0, 1, 2, 1), adapted=False)
    assert not desc.empty and "H^0" in desc.holomorphic_data


def test_nu_zero_set_validation():
    with pytest.raises(SchemaError):
        NuZeroSet(genus=2, zeros=(("p", 1),))  # total != 2g-2
    with pytest.raises(SchemaError):
        NuZeroSet(genus=2, zeros=(("p", 0), ("q", 2)))
    with pytest.raises(SchemaError):
        NuZeroSet(genus=0, zeros=())


def test_tunneling_class_constraint():
    with pytest.raises(PreconditionError):
        TunnelingClass(a=1, b_plus=0, b_minus=1, g=2, l=2)
