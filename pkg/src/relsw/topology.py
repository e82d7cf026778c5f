"""Exact topological inputs: 4-manifolds, homology lattices, the surface pair.

Homology is a free integer lattice with an explicit symmetric Gram matrix;
torsion is ignored since every downstream formula factors through pairings
and squares.  All arithmetic is exact integer arithmetic.

Orientation convention, fixed globally: the circle bundle Y over Sigma
carries the orientation induced by the cylindrical end of X - Sigma
(outward-normal-first), so deg(Y) = -Sigma.Sigma throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SchemaError


def sign(n: int) -> int:
    """Sign of an integer, in {-1, 0, 1}."""
    return (n > 0) - (n < 0)


@dataclass(frozen=True)
class ClosedFourManifold:
    """A closed oriented 4-manifold given by its characteristic numbers.

    ``gram`` is the symmetric integer intersection form on H_2/torsion.
    """

    name: str
    euler: int
    signature: int
    b_plus: int
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise SchemaError(f"{self.name}: gram matrix is not square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise SchemaError(
                        f"{self.name}: gram matrix not symmetric at ({i},{j})"
                    )
        if self.b_plus < 0:
            raise SchemaError(f"{self.name}: b_plus must be non-negative")
        b_minus = self.b_plus - self.signature
        if b_minus < 0:
            raise SchemaError(
                f"{self.name}: b_minus = b_plus - signature = {b_minus} < 0"
            )
        if n != self.b_plus + b_minus:
            raise SchemaError(
                f"{self.name}: gram rank {n} != b_plus + b_minus = "
                f"{self.b_plus + b_minus}"
            )

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def b_minus(self) -> int:
        return self.b_plus - self.signature

    def pairing(self, a: "HomologyClass", b: "HomologyClass") -> int:
        if a.manifold != self or b.manifold != self:
            raise SchemaError("pairing of classes from different manifolds")
        return sum(
            a.coords[i] * self.gram[i][j] * b.coords[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def cls(self, coords) -> "HomologyClass":
        return HomologyClass(self, tuple(int(c) for c in coords))

    def zero_class(self) -> "HomologyClass":
        return HomologyClass(self, (0,) * self.rank)


@dataclass(frozen=True)
class HomologyClass:
    """Integer homology class in the lattice of a fixed manifold."""

    manifold: ClosedFourManifold = field(repr=False)
    coords: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.coords) != self.manifold.rank:
            raise SchemaError(
                f"class of length {len(self.coords)} in a rank-"
                f"{self.manifold.rank} lattice"
            )

    def dot(self, other: "HomologyClass") -> int:
        return self.manifold.pairing(self, other)

    @property
    def self_intersection(self) -> int:
        return self.dot(self)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        if other.manifold != self.manifold:
            raise SchemaError("sum of classes from different manifolds")
        return HomologyClass(
            self.manifold,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
        )

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-1) * other

    def __rmul__(self, k: int) -> "HomologyClass":
        return HomologyClass(self.manifold, tuple(k * c for c in self.coords))

    def __neg__(self) -> "HomologyClass":
        return (-1) * self


@dataclass(frozen=True)
class PairXSigma:
    """An embedded closed oriented genus-g surface Sigma inside X.

    b_plus_complement (b+ of X - Sigma) is user-supplied: its value depends
    on data outside this lattice model.  Validation only requires
    b_plus_complement <= b_plus(X) + 1.
    """

    manifold: ClosedFourManifold
    genus: int
    sigma_class: HomologyClass
    b_plus_complement: int
    sigma_self: int = None  # cached Sigma.Sigma; derived if omitted

    def __post_init__(self):
        if self.genus < 0:
            raise SchemaError("genus must be non-negative")
        if self.sigma_class.manifold != self.manifold:
            raise SchemaError("sigma class lives in a different lattice")
        n = self.sigma_class.self_intersection
        if self.sigma_self is None:
            object.__setattr__(self, "sigma_self", n)
        elif self.sigma_self != n:
            raise SchemaError(
                f"cached sigma_self {self.sigma_self} != Sigma.Sigma = {n}"
            )
        if not 0 <= self.b_plus_complement <= self.manifold.b_plus + 1:
            raise SchemaError(
                "b_plus_complement out of range [0, b_plus(X)+1]"
            )

    @property
    def euler_complement(self) -> int:
        """chi(X - Sigma) = chi(X) - (2 - 2g)."""
        return self.manifold.euler - (2 - 2 * self.genus)

    @property
    def signature_complement(self) -> int:
        """sigma(X - Sigma) = sigma(X) - sign(Sigma.Sigma), by signature additivity."""
        return self.manifold.signature - sign(self.sigma_self)

    @property
    def epsilon(self) -> int:
        """sign(Sigma.Sigma) in {-1, 0, 1}."""
        return sign(self.sigma_self)


@dataclass(frozen=True)
class CircleBundle:
    """Circle bundle over a genus-g surface; degree l = -Sigma.Sigma when induced."""

    base_genus: int
    degree: int


def build_pair(
    manifold: ClosedFourManifold,
    sigma: HomologyClass,
    genus: int,
    b_plus_complement: int,
) -> PairXSigma:
    """Assemble a pair (X, Sigma) with cached complement invariants."""
    return PairXSigma(
        manifold=manifold,
        genus=genus,
        sigma_class=sigma,
        b_plus_complement=b_plus_complement,
    )


def circle_bundle_of(pair: PairXSigma) -> CircleBundle:
    """Boundary circle bundle of a tubular neighbourhood, outward-normal-first."""
    return CircleBundle(base_genus=pair.genus, degree=-pair.sigma_self)
