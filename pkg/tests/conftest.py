"""Shared fixtures and random-instance generators."""

from __future__ import annotations

import random

import pytest

from relsw.topology import ClosedFourManifold, build_pair


def diag_manifold(signs, euler, name="T"):
    """Manifold with a diagonal(+-1) intersection form."""
    rank = len(signs)
    b_plus = sum(1 for s in signs if s > 0)
    signature = 2 * b_plus - rank
    gram = tuple(
        tuple(signs[i] if i == j else 0 for j in range(rank)) for i in range(rank)
    )
    return ClosedFourManifold(
        name=name, euler=euler, signature=signature, b_plus=b_plus, gram=gram
    )


def random_admissible_instance(rng: random.Random):
    """(pair, c1L) with the dimension numerator divisible by 4.

    Built by making c1(L) + Sigma characteristic for a diagonal form and
    chi = sigma (mod 2), which forces divisibility.
    """
    rank = rng.randint(2, 5)
    signs = [rng.choice((1, -1)) for _ in range(rank)]
    signs[rng.randrange(rank)] = 1  # ensure b+ >= 1
    signature = 2 * sum(1 for s in signs if s > 0) - rank
    euler = 2 * rng.randint(-6, 6) + (signature % 2)
    x = diag_manifold(signs, euler)
    sigma = x.cls([rng.randint(-3, 3) for _ in range(rank)])
    genus = rng.randint(0, 6)
    characteristic = x.cls([2 * rng.randint(-2, 2) + 1 for _ in range(rank)])
    c1L = characteristic - sigma
    pair = build_pair(x, sigma, genus, b_plus_complement=1)
    return pair, c1L


def random_symplectic_instance(rng: random.Random):
    """(pair, K, e) modelling the symplectic bookkeeping exactly:

    K odd-characteristic with K^2 = 2 chi + 3 sigma, the genus given by
    adjunction (K.Sigma + Sigma.Sigma = 2g - 2), and e on the
    deg(L_Sigma) <= 0 branch (e.Sigma <= g - 1).
    """
    while True:
        rank = rng.randint(2, 5)
        signs = [rng.choice((1, -1)) for _ in range(rank)]
        signs[rng.randrange(rank)] = 1
        signature = 2 * sum(1 for s in signs if s > 0) - rank
        x0 = diag_manifold(signs, euler=0)
        k = x0.cls([2 * rng.randint(-2, 2) + 1 for _ in range(rank)])
        k_sq = k.self_intersection
        if (k_sq - 3 * signature) % 2 != 0:
            continue
        euler = (k_sq - 3 * signature) // 2
        x = diag_manifold(signs, euler)
        k = x.cls(k.coords)
        sigma = x.cls([rng.randint(-2, 2) for _ in range(rank)])
        two_g_minus_2 = k.dot(sigma) + sigma.self_intersection
        if two_g_minus_2 % 2 != 0 or two_g_minus_2 < 0:
            continue
        genus = (two_g_minus_2 + 2) // 2
        e = None
        for _ in range(30):
            cand = x.cls([rng.randint(-2, 2) for _ in range(rank)])
            if cand.dot(sigma) <= genus - 1:
                e = cand
                break
        if e is None:
            continue
        pair = build_pair(x, sigma, genus, b_plus_complement=1)
        return pair, k, e


@pytest.fixture
def rng():
    return random.Random(20240817)
