"""Finite-dimensional spectral-flow laboratory.

Models the linear paths H_t = H0 + t*P of real symmetric operators that
govern the resonance analysis: a brute-force eigenvalue-crossing counter,
the order-by-order resonance prediction on ker H0, the closed-form signature
counts, and the eigenvalue-pairing check for the complex-symmetric block
structure.

Counting convention: the flow of the path on (0, 1] is
#neg(H0) - #neg(H0 + P), counting strictly negative eigenvalues, so a kernel
eigenvalue departing downward at t = 0 contributes -1.  This matches the
resonance prediction -(number of negative-definite directions over all
orders).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, SolverError

_REL_KERNEL_TOL = 1e-8
_PINV_CUTOFF = 1e-12


@dataclass
class SpectralPath:
    """Linear path H_t = H0 + t*P of real symmetric matrices, t in [0, 1]."""

    H0: np.ndarray
    P: np.ndarray
    samples: int = 64

    def __post_init__(self):
        self.H0 = np.asarray(self.H0, dtype=float)
        self.P = np.asarray(self.P, dtype=float)
        for name, m in (("H0", self.H0), ("P", self.P)):
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise PreconditionError(f"{name} is not square")
            if not np.allclose(m, m.T, atol=1e-12 * (1 + np.abs(m).max())):
                raise PreconditionError(f"{name} is not symmetric")
        if self.H0.shape != self.P.shape:
            raise PreconditionError("H0 and P dimensions disagree")
        if self.samples < 2:
            raise PreconditionError("need at least 2 samples")


@dataclass
class ResonanceReport:
    """Order expansion bookkeeping on ker H0."""

    dim_ker_H0: int
    neg_Q: int
    pos_Q: int
    ker_R_dim: int
    higher_order: list[tuple[int, int]] = field(default_factory=list)
    predicted_flow: int = 0
    residual_kernel_dim: int = 0


def _scale(path: SpectralPath) -> float:
    s = float(np.abs(path.H0).max() + np.abs(path.P).max())
    return s if s > 0 else 1.0


def _neg_count(H: np.ndarray, tol: float) -> int:
    return int(np.sum(np.linalg.eigvalsh(H) < -tol))


def _min_abs_eig(H: np.ndarray) -> float:
    return float(np.min(np.abs(np.linalg.eigvalsh(H))))


def spectral_flow_bruteforce(path: SpectralPath) -> int:
    """Signed count of eigenvalue crossings of 0 along t in (0, 1].

    Locates every change of the negative-eigenvalue count on a sample grid,
    sharpening each bracket by bisection; unresolvable clusters (several
    crossings that refuse to separate within the refinement budget) raise.
    The endpoint H0 + P must be non-degenerate.
    """
    tol = _REL_KERNEL_TOL * _scale(path)

    def H(t: float) -> np.ndarray:
        return path.H0 + t * path.P

    if _min_abs_eig(H(1.0)) < tol:
        raise PreconditionError("endpoint H0 + P is degenerate")

    ts = np.linspace(0.0, 1.0, path.samples)
    negs = [_neg_count(H(t), tol) for t in ts]

    flow = 0
    for i in range(len(ts) - 1):
        d = negs[i + 1] - negs[i]
        if d == 0:
            continue
        # bracket each crossing; bisection both localises it and verifies
        # the count change is stable under refinement
        flow -= _resolve_bracket(H, ts[i], ts[i + 1], negs[i], negs[i + 1], tol)
    return flow


def _resolve_bracket(H, t0, t1, n0, n1, tol, budget: int = 80) -> int:
    """Total negative-count change across [t0, t1], refined by bisection."""
    if n1 == n0:
        return 0
    if abs(n1 - n0) == 1 or budget <= 0:
        if budget <= 0 and abs(n1 - n0) > 1:
            raise SolverError(
                f"refinement budget exhausted on [{t0}, {t1}] with "
                f"{abs(n1 - n0)} unresolved crossings"
            )
        return n1 - n0
    tm = 0.5 * (t0 + t1)
    nm = _neg_count(H(tm), tol)
    return _resolve_bracket(H, t0, tm, n0, nm, tol, budget - 1) + _resolve_bracket(
        H, tm, t1, nm, n1, tol, budget - 1
    )


def resonance_prediction(H0, P, depth: int = 3) -> ResonanceReport:
    """Predict the t = 0 contribution to the spectral flow from ker H0.

    Order 1 counts the negative eigenvalues of Q, the compression of P to
    ker H0.  Degenerate directions (ker Q) continue to order k via the chain
    Xi_j = -(S P) Xi_{j-1} with S the reduced resolvent of H0 (pseudo-inverse
    orthogonal to the kernel) and the symmetric forms
    B^k(Xi, Xi') = <Xi, P Xi'_k> on the surviving kernel.  A kernel remaining
    at `depth` is reported, not guessed.
    """
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    H0 = np.asarray(H0, dtype=float)
    P = np.asarray(P, dtype=float)
    path = SpectralPath(H0, P)  # reuse symmetry validation
    scale = _scale(path)
    tol = _REL_KERNEL_TOL * scale

    lam, vec = np.linalg.eigh(H0)
    kernel_mask = np.abs(lam) <= tol
    W = vec[:, kernel_mask]
    dim_ker = W.shape[1]

    # reduced resolvent: inverse on the orthogonal complement of the kernel
    inv = np.zeros_like(lam)
    big = np.abs(lam) > max(tol, _PINV_CUTOFF * np.abs(lam).max())
    inv[big] = 1.0 / lam[big]
    S = (vec * inv) @ vec.T

    report = ResonanceReport(dim_ker_H0=dim_ker, neg_Q=0, pos_Q=0, ker_R_dim=0)
    if dim_ker == 0:
        return report

    chain = W.copy()  # Xi_{order-1} columns for the current subspace basis
    basis = W
    for order in range(1, depth + 1):
        M = basis.T @ P @ chain
        M = 0.5 * (M + M.T)
        mu, mv = np.linalg.eigh(M)
        ctol = tol if order == 1 else _REL_KERNEL_TOL * (1 + np.abs(M).max())
        neg = int(np.sum(mu < -ctol))
        pos = int(np.sum(mu > ctol))
        ker = int(np.sum(np.abs(mu) <= ctol))
        if order == 1:
            report.neg_Q, report.pos_Q, report.ker_R_dim = neg, pos, ker
        else:
            report.higher_order.append((order, neg))
        report.predicted_flow -= neg
        if ker == 0:
            return report
        keep = mv[:, np.abs(mu) <= ctol]
        basis = basis @ keep
        chain = chain @ keep
        chain = -S @ (P @ chain)  # advance Xi_k -> Xi_{k+1} for the next order
    report.residual_kernel_dim = basis.shape[1]
    return report


def q_signature_closed_form(g: int, d_plus: int, d_minus: int) -> tuple[int, int]:
    """(dim ker Q, dim_- Q) for the resonance form on the circle bundle.

    dim ker = 2(g - (d_+ + d_- - 1)) + 1 and dim_- = 2(d_- + d_+ - 1) + 1.
    """
    if d_plus < 1 or d_minus < 1:
        raise PreconditionError("d_+ and d_- must be >= 1")
    if g < d_plus + d_minus - 1:
        raise PreconditionError("requires g >= d_+ + d_- - 1")
    dim_ker = 2 * (g - (d_plus + d_minus - 1)) + 1
    dim_neg = 2 * (d_minus + d_plus - 1) + 1
    return dim_ker, dim_neg


@dataclass(frozen=True)
class SFClosedForm:
    minus_sf_plus: int
    degenerate_contribution_x: int


def sf_closed_form(g: int, d_plus: int, d_minus: int, l: int) -> SFClosedForm:
    """Closed form for -SF_+: g + d_+ + d_- + 1 if l > 0, g + d_+ + d_- if l < 0.

    Also exposes x, the degenerate-pair contribution
    (g - (d_+ + d_- - 1)) + (1 if l > 0 else 0).
    """
    if l == 0:
        raise PreconditionError("closed form requires l != 0")
    q_signature_closed_form(g, d_plus, d_minus)  # validates bounds
    x = (g - (d_plus + d_minus - 1)) + (1 if l > 0 else 0)
    minus_sf = x + 2 * (d_minus + d_plus - 1) + 1
    expected = g + d_plus + d_minus + (1 if l > 0 else 0)
    assert minus_sf == expected
    return SFClosedForm(minus_sf_plus=minus_sf, degenerate_contribution_x=x)


def pairing_structure_check(X, Y, alpha: float, atol: float = 1e-10) -> bool:
    """Spectrum of [[alpha,0,0],[0,X,-Y],[0,-Y,-X]] is symmetric off the alpha block.

    X + iY complex symmetric; the involution (u, v) -> (-v, u) anticommutes
    with the lower block, pairing each eigenvalue lambda with -lambda.
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    for name, m in (("X", X), ("Y", Y)):
        if m.shape != X.shape or m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise PreconditionError(f"{name} must be square and match X")
        if not np.allclose(m, m.T, atol=1e-12 * (1 + np.abs(m).max())):
            raise PreconditionError(f"{name} is not symmetric")
    block = np.block([[X, -Y], [-Y, -X]])
    lam = np.sort(np.linalg.eigvalsh(block))
    return bool(np.allclose(lam, -lam[::-1], atol=atol))
