"""Independent brute-force oracles used by the test suite.

These deliberately re-derive results through different code paths than the
package: the component classifier is a literal transcription of the
circle-bundle case analysis, subset/partition enumeration goes through
itertools, and the symmetric-product Betti numbers come from explicit
power-series multiplication instead of coefficient formulas.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def classify_components_bruteforce(g: int, l: int, residue: int):
    """Literal case analysis for the moduli components on a circle bundle.

    Returns a sorted list of tuples:
      ("red", model_tag, theta_flag_or_None) for the reducible part,
      ("irr", m, divisor_degree) for each irreducible component.
    """
    out = []
    if l != 0:
        degrees = sorted(
            d for d in range(0, max(2 * g - 1, 0)) if (d - residue) % abs(l) == 0
        )
        # reducible flat torus always exists; theta description iff l | deg(L)
        theta = (2 * residue - (2 * g - 2)) % abs(l) == 0
        out.append(("red", "T2g", theta))
    else:
        degrees = [residue] if 0 <= residue <= 2 * g - 2 else []
        if residue == g - 1:
            out.append(("red", "T2g1", None))
        else:
            out.append(("red", "empty", None))
    for d in degrees:
        if d == g - 1:
            continue  # the m = 0 slot is the reducible one
        m = d - (g - 1)
        out.append(("irr", m, min(d, 2 * g - 2 - d)))
    return sorted(out, key=str)


def subsets_bruteforce(zero_list: list[str], d: int) -> set[tuple[str, ...]]:
    """All size-d sub-multisets of a list of (repeated) labels."""
    found = set()
    for combo in itertools.combinations(range(len(zero_list)), d):
        found.add(tuple(sorted(zero_list[i] for i in combo)))
    return found


def partition_count_bruteforce(d: int) -> int:
    """Count partitions by direct recursion on the largest part."""

    def count(remaining, max_part):
        if remaining == 0:
            return 1
        return sum(
            count(remaining - p, p) for p in range(min(remaining, max_part), 0, -1)
        )

    return count(d, d) if d > 0 else 1


def symd_betti_series(g: int, d: int) -> list[int]:
    """Betti numbers of Sym^d(Sigma_g) via explicit power-series arithmetic.

    Multiplies (1 + t q)^(2g) by the geometric series of 1/(1-q) and
    1/(1 - t^2 q), truncated at q^d, entirely with integer polynomial lists.
    """

    def poly_mul_q(a, b, qmax):
        # a, b: lists over q-degree of lists over t-degree
        out = [[0] for _ in range(qmax + 1)]
        for i, ai in enumerate(a):
            if i > qmax:
                break
            for j, bj in enumerate(b):
                if i + j > qmax:
                    break
                cell = out[i + j]
                need = len(ai) + len(bj) - 1
                if len(cell) < need:
                    cell.extend([0] * (need - len(cell)))
                for s, x in enumerate(ai):
                    if x == 0:
                        continue
                    for r, y in enumerate(bj):
                        cell[s + r] += x * y
        return out

    # (1 + t q)^(2g)
    binom = [[1]]
    factor = [[1], [0, 1]]  # 1 + t*q
    for _ in range(2 * g):
        binom = poly_mul_q(binom, factor, d)
    geom_q = [[1] for _ in range(d + 1)]  # 1/(1-q)
    geom_t2q = [[0] * (2 * k) + [1] for k in range(d + 1)]  # 1/(1 - t^2 q)
    series = poly_mul_q(poly_mul_q(binom, geom_q, d), geom_t2q, d)
    coeffs = series[d]
    coeffs = coeffs + [0] * (2 * d + 1 - len(coeffs))
    return coeffs[: 2 * d + 1]


def xi_route_dimension(c1_sq, c1_dot_sigma, sigma_sq, euler, signature, genus):
    """Lemma-route dimension rebuilt from scratch on raw integers."""
    eps = (sigma_sq > 0) - (sigma_sq < 0)
    chi_c = euler - (2 - 2 * genus)
    sig_c = signature - eps
    m = Fraction(c1_dot_sigma, 2)
    deg_e = m + (genus - 1)
    xi = deg_e + Fraction(sigma_sq - 3 * eps, 4)
    return Fraction(c1_sq - 2 * chi_c - 3 * sig_c, 4) + xi
