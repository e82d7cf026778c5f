"""Combinatorics of the fiber-sum formula.

Relative-invariant values are inputs (tables); the engine enumerates the
spin^c splittings of a sum X1 #_Sigma X2, assembles the bilinear right-hand
side over the finite perturbed moduli S_d(nu), and runs the dimension
bookkeeping (Kunneth degrees, symmetric-product Betti numbers, partition /
divisor-space models, gluing additivity, reducible defect).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dimensions import dim_adapted, dim_classic_closed, dim_reducible
from .errors import PreconditionError, SchemaError
from .moduli3 import NuZeroSet, perturbed_components
from .spinc import LogSpinc
from .topology import PairXSigma


def divisor_label(divisor: tuple[tuple[str, int], ...]) -> str:
    """Canonical label of an S_d(nu) element; the empty divisor is '0'."""
    if not divisor:
        return "0"
    return "+".join(
        (f"{k}*{p}" if k > 1 else p) for p, k in sorted(divisor)
    )


@dataclass(frozen=True)
class SplitProblem:
    """Fiber-sum input: two pairs with dual self-intersections, shared genus."""

    pair1: PairXSigma
    pair2: PairXSigma
    residues: tuple[int, int]

    def __post_init__(self):
        if self.pair1.genus != self.pair2.genus:
            raise SchemaError("genera of the two sides differ")
        if self.pair1.sigma_self != -self.pair2.sigma_self:
            raise SchemaError(
                "self-intersections are not dual: "
                f"{self.pair1.sigma_self} vs {self.pair2.sigma_self}"
            )

    @property
    def genus(self) -> int:
        return self.pair1.genus


@dataclass
class RelativeInvariantTable:
    """Map (side, m, q-label) -> integer relative invariant value."""

    entries: dict[tuple[int, int, str], int] = field(default_factory=dict)

    def value(self, side: int, m: int, q: str) -> int:
        try:
            return self.entries[(side, int(m), q)]
        except KeyError:
            raise PreconditionError(
                f"missing table entry (side={side}, m={m}, q={q!r})"
            ) from None

    def scaled(self, c: int) -> "RelativeInvariantTable":
        return RelativeInvariantTable({k: c * v for k, v in self.entries.items()})

    def plus(self, other: "RelativeInvariantTable") -> "RelativeInvariantTable":
        keys = set(self.entries) | set(other.entries)
        return RelativeInvariantTable(
            {k: self.entries.get(k, 0) + other.entries.get(k, 0) for k in keys}
        )

    @classmethod
    def from_csv(cls, path) -> "RelativeInvariantTable":
        entries = {}
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                try:
                    key = (int(row["side"]), int(row["m"]), row["q"])
                    entries[key] = int(row["value"])
                except (KeyError, ValueError) as exc:
                    raise SchemaError(f"bad table row {row!r}: {exc}") from None
        return cls(entries)


def enumerate_splittings(sp: SplitProblem) -> list[tuple[int, int]]:
    """All (m1, m2) with 0 < |m_i| <= g-1, degrees in the residue classes,
    and equal degree along Sigma (|m1| = |m2|)."""
    g = sp.genus
    out = []
    for m1 in _admissible_ms(sp.pair1, sp.residues[0], g):
        for m2 in _admissible_ms(sp.pair2, sp.residues[1], g):
            if abs(m1) == abs(m2):
                out.append((m1, m2))
    return out


def _admissible_ms(pair: PairXSigma, residue: int, g: int) -> list[int]:
    l = -pair.sigma_self
    ms = []
    for d in range(0, 2 * g - 1):
        if d == g - 1:
            continue
        if l == 0:
            if d != residue:
                continue
        elif (d - residue) % abs(l) != 0:
            continue
        ms.append(d - (g - 1))
    return ms


def sum_rhs_pointwise(
    sp: SplitProblem,
    t1: RelativeInvariantTable,
    t2: RelativeInvariantTable,
    zeros: NuZeroSet,
    signs: dict[tuple[int, int, str], int] | None = None,
) -> int:
    """Right-hand side of the sum formula:

    sum over splittings (m1, m2) and q in S_{d(s)}(nu) of
    eps(m1, m2, q) * SW1(m1; q) * SW2(m2; q); eps defaults to +1.
    """
    if zeros.genus != sp.genus:
        raise SchemaError("nu zero set genus differs from the split problem")
    signs = signs or {}
    g = sp.genus
    total = 0
    for m1, m2 in enumerate_splittings(sp):
        d = (g - 1) - abs(m1)
        for divisor in perturbed_components(zeros, d):
            q = divisor_label(divisor)
            eps = signs.get((m1, m2, q), 1)
            if eps not in (-1, 1):
                raise SchemaError(f"sign table value {eps} not in {{-1, +1}}")
            total += eps * t1.value(1, m1, q) * t2.value(2, m2, q)
    return total


def total_adapted_invariant(
    table: RelativeInvariantTable, side: int, m: int, zeros: NuZeroSet
) -> int:
    """sum_q SW(s; q) over S_{d(s)}(nu); nu-independent by the theory."""
    d = (zeros.genus - 1) - abs(m)
    if d < 0:
        return 0
    return sum(
        table.value(side, m, divisor_label(div))
        for div in perturbed_components(zeros, d)
    )


def kunneth_degree_ledger(
    d: int, g: int, d_sw1: int, d_sw2: int
) -> list[tuple[int, int, int]]:
    """Admissible (deg Omega, r1, r2) for the Kunneth pairing on Sym^d(Sigma):

    deg Omega + 2 r1 = d_sw1 and (2d - deg Omega) + 2 r2 = d_sw2, r_i >= 0.
    Outputs depend on the regularity of the tunneling spaces (flagged by the
    caller when reporting).
    """
    out = []
    for deg in range(0, 2 * d + 1):
        r1_twice = d_sw1 - deg
        r2_twice = d_sw2 - (2 * d - deg)
        if r1_twice >= 0 and r1_twice % 2 == 0 and r2_twice >= 0 and r2_twice % 2 == 0:
            out.append((deg, r1_twice // 2, r2_twice // 2))
    return out


def poincare_polynomial_symd(g: int, d: int) -> list[int]:
    """Betti numbers of Sym^d of a genus-g surface.

    Coefficient extraction from the generating identity
    sum_d P_t(Sym^d) q^d = (1+tq)^{2g} / ((1-q)(1-t^2 q)), in exact integers:
    b_i = sum over j <= min(i, 2g) with j = i (mod 2) and i + j <= 2d of C(2g, j).
    """
    if d < 0:
        raise PreconditionError("symmetric product degree must be >= 0")
    betti = []
    for i in range(0, 2 * d + 1):
        b = 0
        for j in range(i % 2, min(i, 2 * g) + 1, 2):
            if i + j <= 2 * d:
                b += math.comb(2 * g, j)
        betti.append(b)
    return betti


@dataclass(frozen=True)
class Partition:
    """Partition of d into positive parts, stored sorted ascending."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(int(p) for p in self.parts)))
        if any(p <= 0 for p in self.parts):
            raise SchemaError("partition parts must be positive")

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)


def partitions_of(d: int) -> list[Partition]:
    """All partitions of d; d = 0 yields the empty partition."""
    if d < 0:
        raise PreconditionError("cannot partition a negative integer")
    out = []

    def rec(remaining, max_part, acc):
        if remaining == 0:
            out.append(Partition(tuple(acc)))
            return
        for p in range(min(remaining, max_part), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(d, d if d else 1, [])
    return out


@dataclass(frozen=True)
class DivTModel:
    """Div_t(Sigma) = Sym^{i_1} x ... x Sym^{i_n}: multiplicities and dimension."""

    factors: tuple[int, ...]
    real_dimension: int
    pd_codegree: int


def div_t_model(t: Partition, g: int) -> DivTModel:
    """Group equal parts of the partition into symmetric-product factors."""
    mults = []
    for p in sorted(set(t.parts)):
        mults.append(sum(1 for q in t.parts if q == p))
    k = t.length
    return DivTModel(
        factors=tuple(mults),
        real_dimension=2 * k,
        pd_codegree=2 * (t.total - k),
    )


@dataclass(frozen=True)
class GluedData:
    """User-supplied characteristic data of the glued closed manifold."""

    euler: int
    signature: int
    c1_sq: int


def dimension_additivity_check(
    s1: LogSpinc, s2: LogSpinc, glued: GluedData
) -> bool:
    """dim of the glued closed moduli equals the sum of adapted dimensions.

    Validates the gluing arithmetic chi(X) = chi1 + chi2 - 2(2-2g) and
    sigma(X) = sigma1 + sigma2 before comparing.
    """
    p1, p2 = s1.pair, s2.pair
    SplitProblem(p1, p2, (0, 0))  # reuse duality/genus validation
    g = p1.genus
    chi_expect = p1.manifold.euler + p2.manifold.euler - 2 * (2 - 2 * g)
    if glued.euler != chi_expect:
        raise SchemaError(
            f"glued euler {glued.euler} inconsistent with gluing arithmetic "
            f"{chi_expect}"
        )
    sig_expect = p1.manifold.signature + p2.manifold.signature
    if glued.signature != sig_expect:
        raise SchemaError(
            f"glued signature {glued.signature} != sigma1 + sigma2 = {sig_expect}"
        )
    numerator = glued.c1_sq - 2 * glued.euler - 3 * glued.signature
    glued_dim = Fraction(numerator, 4)
    if glued_dim.denominator != 1:
        raise PreconditionError("glued dimension numerator not divisible by 4")
    return int(glued_dim) == dim_adapted(p1, s1) + dim_adapted(p2, s2)


def reducible_defect(s1_k: LogSpinc, s2_k: LogSpinc) -> int:
    """(d1~ + d2~) - dim of the reducible fiber product; the theory asserts 1.

    The reducible fiber product over the torus T^{2g} has dimension
    d_J,1 + d_J,2 - 2g.  Both sides must satisfy the reducible-dimension
    hypotheses with the same torsion residue k.
    """
    p1, p2 = s1_k.pair, s2_k.pair
    SplitProblem(p1, p2, (0, 0))
    d_j1 = dim_reducible(p1, s1_k)  # validates the Lemma hypotheses, l != 0
    d_j2 = dim_reducible(p2, s2_k)
    k1 = int(s1_k.m) % abs(p1.sigma_self)
    k2 = int(s2_k.m) % abs(p2.sigma_self)
    if k1 != k2:
        raise PreconditionError(f"torsion residues differ between sides: {k1} vs {k2}")
    d_j = d_j1 + d_j2 - 2 * p1.genus
    d_tilde = dim_adapted(p1, s1_k) + dim_adapted(p2, s2_k)
    return d_tilde - d_j
