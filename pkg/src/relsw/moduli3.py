"""Components of the monopole moduli space on a circle bundle Y over Sigma.

The classification is combinatorial: irreducible components are indexed by
line-bundle degrees d in a fixed residue class with 0 <= d <= 2g-2 and
d != g-1, each diffeomorphic to a symmetric product of Sigma; the reducible
solutions form a torus of flat connections.  Divisor points are abstract
labels; no complex-structure data is stored at this level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .dimensions import dim_tunneling
from .errors import PreconditionError, SchemaError
from .topology import CircleBundle, PairXSigma

REDUCIBLE_T2G = "ReducibleTorus2g"
REDUCIBLE_T2G1 = "ReducibleTorus2gPlus1"
REDUCIBLE_EMPTY = "ReducibleEmpty"
IRREDUCIBLE = "Irreducible"


@dataclass(frozen=True)
class PullbackClassOnY:
    """Isomorphism class of pullback line bundles / spin^c structures on Y.

    For l != 0 only the residue of deg(E) mod l matters and torsion_k is the
    residue of m = d - (g-1) in Z/lZ; for l = 0 the degree is exact.
    """

    bundle: CircleBundle
    degree_residue: int

    @property
    def torsion_k(self) -> int:
        l = self.bundle.degree
        if l == 0:
            raise PreconditionError("torsion_k undefined for the trivial bundle")
        return (self.degree_residue - (self.bundle.base_genus - 1)) % abs(l)

    def contains_degree(self, d: int) -> bool:
        l = self.bundle.degree
        if l == 0:
            return d == self.degree_residue
        return (d - self.degree_residue) % abs(l) == 0


@dataclass(frozen=True)
class ModuliComponent3:
    """One connected component of the moduli space on Y."""

    kind: str
    m: int | None = None
    d: int | None = None  # divisor degree: the component is Sym^d(Sigma)
    theta_flag: bool | None = None
    csd_level: Fraction | None = None

    @property
    def is_reducible(self) -> bool:
        return self.kind != IRREDUCIBLE

    @property
    def model(self) -> str:
        if self.kind == IRREDUCIBLE:
            return "pt" if self.d == 0 else f"Sym^{self.d}(Sigma)"
        if self.kind == REDUCIBLE_T2G:
            return "T^{2g}"
        if self.kind == REDUCIBLE_T2G1:
            return "T^{2g+1}"
        return "empty"


@dataclass(frozen=True)
class NuZeroSet:
    """Zero divisor of a holomorphic 1-form: 2g-2 labelled points with multiplicity."""

    genus: int
    zeros: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if self.genus < 1:
            raise SchemaError("nu zero set requires genus >= 1")
        z = tuple(sorted((str(p), int(k)) for p, k in dict(self.zeros).items()))
        object.__setattr__(self, "zeros", z)
        if any(k <= 0 for _, k in z):
            raise SchemaError("zero multiplicities must be positive")
        total = sum(k for _, k in z)
        if total != 2 * self.genus - 2:
            raise SchemaError(
                f"total multiplicity {total} != 2g-2 = {2 * self.genus - 2}"
            )

    @property
    def total(self) -> int:
        return 2 * self.genus - 2


@dataclass(frozen=True)
class TunnelingClass:
    """Homology class a*Sigma_- + b_+ F of a cylinder monopole; b_- - b_+ = a*l."""

    a: int
    b_plus: int
    b_minus: int
    g: int
    l: int

    def __post_init__(self):
        if self.b_minus - self.b_plus != self.a * self.l:
            raise PreconditionError(
                f"b_- - b_+ = {self.b_minus - self.b_plus} != a*l = {self.a * self.l}"
            )


@dataclass(frozen=True)
class TunnelingDescription:
    empty: bool
    reason: str = ""
    model: str = ""
    dimension: int | None = None
    fiberwise_constant: bool = False
    holomorphic_data: str = ""
    cardinality: int | None = None


def csd_level(m, l: int) -> Fraction:
    """Chern-Simons-Dirac level (2m)^2 / l, positive constant normalised to 1."""
    if l == 0:
        raise PreconditionError(
            "CSD levels on a trivial bundle are all 0 against a flat background; "
            "no level ordering is defined"
        )
    m = Fraction(m)
    return Fraction(4) * m * m / l


def enumerate_components(y: CircleBundle, cls: PullbackClassOnY) -> list[ModuliComponent3]:
    """All components of the unperturbed moduli space for one pullback class.

    Irreducible: one per degree d in the class with 0 <= d <= 2g-2, d != g-1,
    with m = d - (g-1) and landing model Sym^{(g-1)-|m|}(Sigma).  Reducible:
    T^{2g} whenever l != 0 (theta_flag marks deg(L) = 0 mod l); for l = 0 the
    torus T^{2g+1} exists only if the class is the degree g-1 one.
    """
    if cls.bundle != y:
        raise SchemaError("pullback class belongs to a different bundle")
    g, l = y.base_genus, y.degree
    out: list[ModuliComponent3] = []

    if l != 0:
        # deg(L) = 2d - (2g-2) mod l is constant on the residue class
        theta = (2 * cls.degree_residue - (2 * g - 2)) % abs(l) == 0
        out.append(
            ModuliComponent3(kind=REDUCIBLE_T2G, theta_flag=theta, csd_level=Fraction(0))
        )
    elif cls.degree_residue == g - 1:
        out.append(ModuliComponent3(kind=REDUCIBLE_T2G1, csd_level=Fraction(0)))
    else:
        out.append(ModuliComponent3(kind=REDUCIBLE_EMPTY))

    for d in range(0, 2 * g - 1):
        if d == g - 1 or not cls.contains_degree(d):
            continue
        m = d - (g - 1)
        level = csd_level(m, l) if l != 0 else Fraction(0)
        out.append(
            ModuliComponent3(
                kind=IRREDUCIBLE,
                m=m,
                d=(g - 1) - abs(m),
                csd_level=level,
            )
        )
    return out


def perturbed_components(zeros: NuZeroSet, d: int) -> Iterator[tuple[tuple[str, int], ...]]:
    """Stream the finite moduli S_d(nu): sub-multisets of Div(nu) of size d.

    Each element is a sorted tuple of (label, multiplicity) pairs; the empty
    divisor is the empty tuple.  The reducible component is absent under a
    nu-perturbation.
    """
    if not 0 <= d <= zeros.total:
        raise PreconditionError(f"degree {d} outside [0, {zeros.total}]")
    labels = [p for p, _ in zeros.zeros]
    caps = [k for _, k in zeros.zeros]
    for mults in _bounded_compositions(caps, d):
        yield tuple(
            (lab, mu) for lab, mu in zip(labels, mults) if mu > 0
        )


def _bounded_compositions(caps: list[int], total: int) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    head = caps[0]
    for take in range(min(head, total), -1, -1):
        for rest in _bounded_compositions(caps[1:], total - take):
            yield (take,) + rest


def complement_divisor(
    zeros: NuZeroSet, divisor: tuple[tuple[str, int], ...]
) -> tuple[tuple[str, int], ...]:
    """The S_d(nu) <-> S_{2g-2-d}(nu) bijection."""
    have = dict(divisor)
    out = []
    for lab, cap in zeros.zeros:
        rest = cap - have.get(lab, 0)
        if rest < 0:
            raise PreconditionError(f"divisor exceeds multiplicity at {lab}")
        if rest > 0:
            out.append((lab, rest))
    return tuple(out)


def tunneling_admissible(frm: ModuliComponent3, to: ModuliComponent3) -> bool:
    """CSD must strictly increase along a tunneling."""
    if frm.csd_level is None or to.csd_level is None:
        raise PreconditionError("components without CSD levels cannot be compared")
    return frm.csd_level < to.csd_level


def stratum_codimension(k: int, starts_at_reducible: bool, sigma_self: int) -> int:
    """Expected codimension of the level-k broken-trajectory stratum.

    2k for chains of irreducibles; 2k+1 when the chain starts at the
    reducible torus, which requires Sigma.Sigma < 0 (CSD is minimal there).
    """
    if k < 1:
        raise PreconditionError("stratum level k must be >= 1")
    if starts_at_reducible:
        if sigma_self > 0:
            raise PreconditionError(
                "no chain starts at the reducible when Sigma.Sigma > 0 "
                "(CSD is maximal on it)"
            )
        if sigma_self == 0:
            raise PreconditionError(
                "reducible-start strata are classified only for Sigma.Sigma < 0"
            )
        return 2 * k + 1
    return 2 * k


def compactness_certificate(pair: PairXSigma) -> bool:
    """True when Sigma.Sigma > 2g-2: a single irreducible component, hence compact."""
    return pair.sigma_self > 2 * pair.genus - 2


def tunneling_moduli(
    tc: TunnelingClass, adapted: bool, zeros: NuZeroSet | None = None
) -> TunnelingDescription:
    """Describe the tunneling moduli space for one homology class."""
    if adapted:
        if tc.a != 0:
            return TunnelingDescription(
                empty=True,
                reason="spinor zero sets cannot represent effective classes "
                "unless a = 0",
            )
        b = tc.b_plus
        card = None
        if zeros is not None:
            card = sum(1 for _ in perturbed_components(zeros, b))
        return TunnelingDescription(
            empty=False,
            model=f"S_{b}(nu)",
            dimension=dim_tunneling(tc.a, tc.b_plus, tc.b_minus, tc.g, tc.l, True),
            fiberwise_constant=True,
            cardinality=card,
        )
    if not (0 <= tc.b_plus <= 2 * tc.g - 2 and 0 <= tc.b_minus <= 2 * tc.g - 2):
        return TunnelingDescription(
            empty=True, reason="degree bound 0 <= b_+- <= 2g-2 violated"
        )
    dim = dim_tunneling(tc.a, tc.b_plus, tc.b_minus, tc.g, tc.l, False)
    if tc.a == 0:
        return TunnelingDescription(
            empty=False,
            model=f"Sym^{tc.b_plus}(Sigma)",
            dimension=dim,
            fiberwise_constant=True,
        )
    return TunnelingDescription(
        empty=False,
        model="holomorphic-data moduli",
        dimension=dim,
        holomorphic_data=(
            "Phi_+ in H^0(O(e)), conj(Phi_-) in H^0(K_P(log Sigma) (x) O(-e))"
        ),
    )
