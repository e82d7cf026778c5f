"""Command-line surface.

Subcommands: report, components, dims, tunneling, specflow, vortex, sum.
Every command reads one self-describing input file (--input), writes CSV
(UTF-8, LF line endings, header row), figures, and binary grids into --out,
and finishes by writing a manifest listing each artifact with its sha256.

Exit codes: 0 success, 2 schema errors, 3 formula precondition failures,
4 solver non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import gridio, plots, schema
from .dimensions import dimension_report, dim_tunneling
from .errors import PreconditionError, RelSWError, SchemaError, SolverError
from .moduli3 import (
    PullbackClassOnY,
    TunnelingClass,
    compactness_certificate,
    enumerate_components,
    tunneling_moduli,
)
from .specflow import SpectralPath, resonance_prediction, spectral_flow_bruteforce
from .spinc import degree_along_sigma
from .sumformula import (
    dimension_additivity_check,
    enumerate_splittings,
    reducible_defect,
    sum_rhs_pointwise,
)
from .topology import circle_bundle_of
from .vortex import VortexProblem, solve_vortex, verify_integrated_identity


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


class OutputDir:
    """Collects artifacts and writes the closing manifest."""

    def __init__(self, path):
        self.path = Path(path)
        self.path.mkdir(parents=True, exist_ok=True)
        self.artifacts: dict[str, str] = {}

    def file(self, name: str) -> Path:
        return self.path / name

    def register(self, name: str) -> None:
        digest = hashlib.sha256(self.file(name).read_bytes()).hexdigest()
        self.artifacts[name] = digest

    def write_csv(self, name: str, header: list[str], rows) -> None:
        with open(self.file(name), "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(x) for x in row])
        self.register(name)

    def write_json(self, name: str, payload) -> None:
        with open(self.file(name), "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        self.register(name)

    def finish(self) -> None:
        with open(self.file("manifest.json"), "w", encoding="utf-8") as fh:
            json.dump({"artifacts": self.artifacts}, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _dims_rows(pair, spincs):
    rows = []
    for label, s in spincs:
        rep = dimension_report(pair, s)
        rows.append(
            [
                label,
                s.m,
                degree_along_sigma(s),
                rep.d_main,
                rep.d_adapted,
                rep.xi_compact,
                rep.xi_adapted,
                rep.route_check,
                rep.d_reducible,
            ]
        )
    return rows


_DIMS_HEADER = [
    "label", "m", "d_s", "d_main", "d_adapted",
    "xi_compact", "xi_adapted", "route_check", "d_reducible",
]


def _component_rows(pair, spincs):
    y = circle_bundle_of(pair)
    rows, per_label = [], {}
    for label, s in spincs:
        if not s.m_is_integer:
            raise PreconditionError(
                f"spinc {label}: components need integer m, got {s.m}"
            )
        degree = int(s.m) + (pair.genus - 1)
        residue = degree % abs(y.degree) if y.degree != 0 else degree
        cls = PullbackClassOnY(bundle=y, degree_residue=residue)
        comps = enumerate_components(y, cls)
        comps_sorted = sorted(
            comps, key=lambda c: (c.csd_level is None, c.csd_level or 0)
        )
        per_label[label] = comps_sorted
        for rank, comp in enumerate(comps_sorted):
            rows.append(
                [label, rank, comp.kind, comp.m, comp.d, comp.model,
                 comp.theta_flag, comp.csd_level]
            )
    return rows, per_label


_COMPONENTS_HEADER = [
    "label", "csd_rank", "kind", "m", "sym_degree", "model",
    "theta_flag", "csd_level",
]


def cmd_report(args) -> int:
    doc = schema.load_document(args.input)
    pair, named = schema.parse_pair(doc)
    spincs = schema.parse_spinc_list(doc, pair, named)
    out = OutputDir(args.out)
    out.write_csv("dims.csv", _DIMS_HEADER, _dims_rows(pair, spincs))
    comp_rows, per_label = _component_rows(pair, spincs)
    out.write_csv("components.csv", _COMPONENTS_HEADER, comp_rows)
    y = circle_bundle_of(pair)
    out.write_csv(
        "summary.csv",
        ["genus", "sigma_self", "bundle_degree", "compact_certificate"],
        [[pair.genus, pair.sigma_self, y.degree, compactness_certificate(pair)]],
    )
    for label, comps in per_label.items():
        name = f"components_{label}.png"
        plots.save_component_figure(
            comps, out.file(name), title=f"components for {label}"
        )
        out.register(name)
    out.finish()
    return 0


def cmd_components(args) -> int:
    doc = schema.load_document(args.input)
    pair, named = schema.parse_pair(doc)
    spincs = schema.parse_spinc_list(doc, pair, named)
    out = OutputDir(args.out)
    comp_rows, per_label = _component_rows(pair, spincs)
    out.write_csv("components.csv", _COMPONENTS_HEADER, comp_rows)
    for label, comps in per_label.items():
        name = f"components_{label}.png"
        plots.save_component_figure(comps, out.file(name), title=f"components for {label}")
        out.register(name)
    out.finish()
    return 0


def cmd_dims(args) -> int:
    doc = schema.load_document(args.input)
    pair, named = schema.parse_pair(doc)
    spincs = schema.parse_spinc_list(doc, pair, named)
    out = OutputDir(args.out)
    out.write_csv("dims.csv", _DIMS_HEADER, _dims_rows(pair, spincs))
    out.finish()
    return 0


def cmd_tunneling(args) -> int:
    doc = schema.load_document(args.input)
    pair, _ = schema.parse_pair(doc)
    block = doc.get("tunneling", {})
    a_max = int(block.get("a_max", 2))
    b_max = int(block.get("b_max", 2 * pair.genus - 2))
    g = pair.genus
    l = -pair.sigma_self
    rows = []
    for a in range(-a_max, a_max + 1):
        for b_plus in range(0, b_max + 1):
            b_minus = b_plus + a * l
            if not 0 <= b_minus <= b_max:
                continue
            tc = TunnelingClass(a=a, b_plus=b_plus, b_minus=b_minus, g=g, l=l)
            unpert = tunneling_moduli(tc, adapted=False)
            adapt = tunneling_moduli(tc, adapted=True)
            rows.append(
                [
                    a, b_plus, b_minus,
                    dim_tunneling(a, b_plus, b_minus, g, l, False),
                    dim_tunneling(a, b_plus, b_minus, g, l, True),
                    unpert.empty, unpert.model,
                    adapt.empty, adapt.model,
                ]
            )
    out = OutputDir(args.out)
    out.write_csv(
        "tunneling.csv",
        ["a", "b_plus", "b_minus", "dim_unperturbed", "dim_adapted",
         "unperturbed_empty", "unperturbed_model", "adapted_empty", "adapted_model"],
        rows,
    )
    out.finish()
    return 0


def read_matrix_pair(path) -> tuple[np.ndarray, np.ndarray]:
    """Plain text dense format: first line n, then n rows of H0, n rows of P."""
    try:
        tokens = Path(path).read_text(encoding="utf-8").split()
    except OSError as exc:
        raise SchemaError(f"cannot read matrix file {path}: {exc}") from None
    try:
        n = int(tokens[0])
        values = [float(t) for t in tokens[1:]]
    except (IndexError, ValueError) as exc:
        raise SchemaError(f"malformed matrix file: {exc}") from None
    if len(values) != 2 * n * n:
        raise SchemaError(
            f"matrix file holds {len(values)} values, expected 2*{n}^2"
        )
    h0 = np.array(values[: n * n]).reshape(n, n)
    p = np.array(values[n * n :]).reshape(n, n)
    return h0, p


def cmd_specflow(args) -> int:
    h0, p = read_matrix_pair(args.input)
    path = SpectralPath(h0, p, samples=args.grid or 64)
    brute = spectral_flow_bruteforce(path)
    report = resonance_prediction(h0, p, depth=args.depth)
    out = OutputDir(args.out)
    rows = [
        ["brute_force_flow", brute],
        ["predicted_flow", report.predicted_flow],
        ["agreement", brute == report.predicted_flow],
        ["dim_ker_H0", report.dim_ker_H0],
        ["neg_Q", report.neg_Q],
        ["pos_Q", report.pos_Q],
        ["ker_R_dim", report.ker_R_dim],
        ["residual_kernel_dim", report.residual_kernel_dim],
    ] + [[f"order_{k}_negatives", c] for k, c in report.higher_order]
    out.write_csv("specflow.csv", ["quantity", "value"], rows)
    out.finish()
    return 0


def cmd_vortex(args) -> int:
    doc = schema.load_document(args.input)
    problem = schema.parse_vortex(doc)
    if problem is None:
        raise SchemaError("input file has no vortex block")
    if args.grid or args.tolerance:
        geom = problem.geometry
        problem = VortexProblem(
            geometry=type(geom)(
                modulus=geom.modulus, n=args.grid or geom.n, area=geom.area
            ),
            divisor=problem.divisor,
            tau=problem.tau,
            tolerance=args.tolerance or problem.tolerance,
            max_iterations=problem.max_iterations,
        )
    sol = solve_vortex(problem, seed=args.seed)
    ident = verify_integrated_identity(sol, problem)
    out = OutputDir(args.out)
    gridio.write_grid(out.file("u.grid"), sol.u_field, problem.geometry, "u")
    out.register("u.grid")
    gridio.write_grid(
        out.file("phi_abs.grid"), sol.phi_modulus, problem.geometry, "abs_phi"
    )
    out.register("phi_abs.grid")
    out.write_csv(
        "summary.csv",
        [
            "N", "degree", "tau", "seed",
            "residual_sup", "iterations",
            "curvature_integral", "curvature_over_2pi", "plaquette_sum",
            "zero_count", "dbar_defect",
            "norm_quadrature", "norm_identity", "identity_discrepancy",
        ],
        [[
            problem.geometry.n, problem.degree, problem.tau,
            args.seed if args.seed is not None else "",
            sol.residual_sup, sol.iterations,
            sol.curvature_integral,
            sol.curvature_integral / (2 * np.pi),
            sol.plaquette_sum,
            sol.zero_count, sol.dbar_defect,
            ident.norm_quadrature, ident.norm_identity,
            ident.relative_discrepancy,
        ]],
    )
    out.write_csv(
        "zeros.csv",
        ["x", "y"],
        [[x, y] for x, y in sol.zero_locations],
    )
    plots.save_vortex_figures(
        sol, problem, out.file("phi_abs.png"), out.file("convergence.png")
    )
    out.register("phi_abs.png")
    out.register("convergence.png")
    out.finish()
    return 0


def cmd_sum(args) -> int:
    doc = schema.load_document(args.input)
    sp, spincs1, spincs2, table, signs, nu, glued = schema.parse_sum_problem(doc)
    out = OutputDir(args.out)
    splittings = enumerate_splittings(sp)
    out.write_csv(
        "splittings.csv",
        ["m1", "m2", "d_s"],
        [[m1, m2, (sp.genus - 1) - abs(m1)] for m1, m2 in splittings],
    )
    summary_rows = []
    if table is not None and nu is not None:
        rhs = sum_rhs_pointwise(sp, table, table, nu, signs)
        summary_rows.append(["sum_rhs", rhs])
    if glued is not None and spincs1 and spincs2:
        for (lab1, s1), (lab2, s2) in zip(spincs1, spincs2):
            verdict = dimension_additivity_check(s1, s2, glued)
            summary_rows.append([f"additivity_{lab1}_{lab2}", verdict])
    if spincs1 and spincs2 and sp.pair1.sigma_self != 0:
        for (lab1, s1), (lab2, s2) in zip(spincs1, spincs2):
            try:
                defect = reducible_defect(s1, s2)
                summary_rows.append([f"reducible_defect_{lab1}_{lab2}", defect])
            except PreconditionError as exc:
                summary_rows.append([f"reducible_defect_{lab1}_{lab2}", f"n/a: {exc}"])
    out.write_csv("sum_report.csv", ["quantity", "value"], summary_rows)
    out.finish()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relsw",
        description="relative Seiberg-Witten toolkit: reports, moduli "
        "classification, vortex solves, spectral flow, sum formula",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "report": cmd_report,
        "components": cmd_components,
        "dims": cmd_dims,
        "tunneling": cmd_tunneling,
        "specflow": cmd_specflow,
        "vortex": cmd_vortex,
        "sum": cmd_sum,
    }
    for name, fn in commands.items():
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="input file")
        p.add_argument("--out", default="relsw-out", help="output directory")
        p.add_argument("--seed", type=int, default=None, help="RNG seed")
        p.add_argument("--grid", type=int, default=None, help="grid size override")
        p.add_argument(
            "--tolerance", type=float, default=None, help="solver tolerance override"
        )
        p.add_argument("--depth", type=int, default=3, help="resonance depth")
        p.set_defaults(fn=fn)
    return parser


def _record_error(args, exc: RelSWError, code: int) -> None:
    try:
        out = OutputDir(args.out)
        out.write_json(
            "errors.json",
            {"error_type": type(exc).__name__, "message": str(exc), "exit_code": code},
        )
    except Exception:
        pass


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        _record_error(args, exc, 2)
        return 2
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        _record_error(args, exc, 4)
        return 4
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        _record_error(args, exc, 3)
        return 3


if __name__ == "__main__":
    sys.exit(main())
