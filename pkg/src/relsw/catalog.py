"""Built-in manifold catalog: the elliptic surfaces E(n).

Characteristic data: chi = 12n, sigma = -8n, b+ = 2n-1, fiber class F with
F.F = 0 and genus 1, canonical class K = (n-2) F.  Intersection forms are
realised explicitly: (2n-1)<+1> + (10n-1)<-1> for odd n and
(2n-1) H + n (-E8) for even n, with F encoded as an explicit isotropic
vector.  Entries are validated at load against the characteristic-number
identities (K^2 = 2 chi + 3 sigma, rank/signature bookkeeping).
"""

from __future__ import annotations

import re

from .errors import SchemaError
from .topology import ClosedFourManifold, HomologyClass, PairXSigma, build_pair

# Bourbaki E8: chain 1-3-4-5-6-7-8 with node 2 attached to node 4
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def _e8_cartan() -> list[list[int]]:
    m = [[0] * 8 for _ in range(8)]
    for i in range(8):
        m[i][i] = 2
    for a, b in _E8_EDGES:
        m[a - 1][b - 1] = -1
        m[b - 1][a - 1] = -1
    return m


def _block_diag(blocks: list[list[list[int]]]) -> tuple[tuple[int, ...], ...]:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[offset + i][offset + j] = b[i][j]
        offset += k
    return tuple(tuple(row) for row in out)


def _en_form(n: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """(gram, fiber coords) for E(n)."""
    if n % 2 == 1:
        b_plus, b_minus = 2 * n - 1, 10 * n - 1
        gram = _block_diag(
            [[[1]]] * b_plus + [[[-1]]] * b_minus
        )
        fiber = [0] * (b_plus + b_minus)
        fiber[0] = 1
        fiber[b_plus] = -1  # e1 - f1 is isotropic
    else:
        h = [[0, 1], [1, 0]]
        e8_neg = [[-x for x in row] for row in _e8_cartan()]
        gram = _block_diag([h] * (2 * n - 1) + [e8_neg] * n)
        fiber = [0] * (2 * (2 * n - 1) + 8 * n)
        fiber[0] = 1  # first hyperbolic basis vector
    return gram, tuple(fiber)


def elliptic_surface(n: int) -> tuple[ClosedFourManifold, HomologyClass, HomologyClass]:
    """E(n) with its fiber class F and canonical class K = (n-2)F."""
    if n < 1:
        raise SchemaError("E(n) requires n >= 1")
    gram, fiber_coords = _en_form(n)
    x = ClosedFourManifold(
        name=f"E({n})",
        euler=12 * n,
        signature=-8 * n,
        b_plus=2 * n - 1,
        gram=gram,
    )
    fiber = x.cls(fiber_coords)
    canonical = (n - 2) * fiber
    _validate_en(x, fiber, canonical, n)
    return x, fiber, canonical


def _validate_en(x, fiber, canonical, n):
    if fiber.self_intersection != 0:
        raise SchemaError(f"E({n}) catalog: F.F = {fiber.self_intersection} != 0")
    k_sq = canonical.self_intersection
    if k_sq != 2 * x.euler + 3 * x.signature:
        raise SchemaError(
            f"E({n}) catalog: K^2 = {k_sq} != 2 chi + 3 sigma = "
            f"{2 * x.euler + 3 * x.signature}"
        )
    if (x.euler + x.signature) % 4 != 0:
        raise SchemaError(f"E({n}) catalog: chi + sigma not divisible by 4")


def fiber_pair(n: int, b_plus_complement: int | None = None) -> tuple[PairXSigma, HomologyClass]:
    """(E(n), F) as a pair, plus the canonical class.

    b_plus_complement defaults to b+(E(n)) - 1; it enters validation only.
    """
    x, fiber, canonical = elliptic_surface(n)
    if b_plus_complement is None:
        b_plus_complement = max(x.b_plus - 1, 0)
    pair = build_pair(x, fiber, genus=1, b_plus_complement=b_plus_complement)
    return pair, canonical


_EN_RE = re.compile(r"^E\((\d+)\)$")


def lookup(name: str):
    """Resolve a catalog name like 'E(2)'; returns (manifold, fiber, canonical)."""
    m = _EN_RE.match(name.strip())
    if not m:
        raise SchemaError(f"unknown catalog manifold {name!r} (supported: E(n))")
    return elliptic_surface(int(m.group(1)))
