"""Figure rendering for the report and vortex paths; Agg backend, files only."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_component_figure(components, path, title="moduli components on Y"):
    """CSD level diagram: one marker per component at (m, level)."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for comp in components:
        if comp.csd_level is None:
            continue
        level = float(comp.csd_level)
        if comp.kind == "Irreducible":
            ax.plot([comp.m], [level], "o", color="tab:blue")
            ax.annotate(
                comp.model, (comp.m, level),
                textcoords="offset points", xytext=(4, 4), fontsize=8,
            )
        else:
            ax.plot([0], [level], "s", color="tab:red")
            ax.annotate(
                comp.model, (0, level),
                textcoords="offset points", xytext=(4, -10), fontsize=8,
            )
    ax.set_xlabel("m = deg(L_Sigma)/2")
    ax.set_ylabel("CSD level")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_vortex_figures(sol, problem, modulus_path, convergence_path):
    """|Phi| heatmap with divisor markers, plus the Newton residual history."""
    geom = problem.geometry
    fig, ax = plt.subplots(figsize=(5.2, 4.6))
    im = ax.imshow(
        sol.phi_modulus.T,
        origin="lower",
        extent=(0, 1, 0, 1),
        cmap="viridis",
        aspect="auto",
    )
    if problem.divisor:
        xs = [p[0] for p in problem.divisor]
        ys = [p[1] for p in problem.divisor]
        ax.plot(xs, ys, "rx", markersize=9, markeredgewidth=2, label="divisor")
        ax.legend(loc="upper right", fontsize=8)
    ax.set_xlabel("lattice coordinate x")
    ax.set_ylabel("lattice coordinate y")
    ax.set_title(f"|Phi| on {geom.n}x{geom.n} grid, d={problem.degree}")
    fig.colorbar(im, ax=ax, label="|Phi|")
    fig.tight_layout()
    fig.savefig(modulus_path, dpi=150)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.semilogy(np.arange(len(sol.residual_history)), sol.residual_history, "o-")
    ax.set_xlabel("Newton iteration")
    ax.set_ylabel("sup residual")
    ax.set_title("Newton convergence")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(convergence_path, dpi=150)
    plt.close(fig)
