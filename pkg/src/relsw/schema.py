"""Input-file schema: parsing, validation, and normalization.

One self-describing JSON document per invocation.  Blocks:

    manifold  {name, euler, signature, b_plus, gram_matrix} or {catalog: "E(n)"}
    sigma     {vector | catalog_class: "fiber", genus, b_plus_complement}
    spinc     [ {label?, c1L_vector} | {label?, twisting_vector, canonical_vector?} ]
    nu        {zeros: {label: multiplicity, ...}}
    vortex    {N, modulus: [re, im], area, tau, divisor: [[x, y], ...], tolerance?}
    tables    {path} or {entries: [[side, m, q, value], ...]}
    pair1/pair2, residues, glued, signs   (sum problems)

Parsing raises SchemaError for malformed documents; re-serialising a
normalised document is idempotent.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import catalog
from .errors import SchemaError
from .moduli3 import NuZeroSet
from .spinc import LogSpinc, log_spinc_from_c1, log_spinc_from_twisting
from .sumformula import GluedData, RelativeInvariantTable, SplitProblem
from .topology import ClosedFourManifold, HomologyClass, PairXSigma, build_pair
from .vortex import TorusGeometry, VortexProblem


def load_document(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read spec file {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("spec file must contain a JSON object")
    return doc


def _require(block: dict, key: str, what: str):
    if key not in block:
        raise SchemaError(f"{what}: missing key {key!r}")
    return block[key]


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def parse_manifold(block: dict) -> tuple[ClosedFourManifold, dict]:
    """Returns the manifold plus named catalog classes (may be empty)."""
    if not isinstance(block, dict):
        raise SchemaError("manifold block must be an object")
    if "catalog" in block:
        x, fiber, canonical = catalog.lookup(str(block["catalog"]))
        return x, {"fiber": fiber, "canonical": canonical}
    gram = _require(block, "gram_matrix", "manifold")
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise SchemaError("manifold: gram_matrix must be a list of rows")
    return (
        ClosedFourManifold(
            name=str(block.get("name", "X")),
            euler=_int(_require(block, "euler", "manifold"), "euler"),
            signature=_int(_require(block, "signature", "manifold"), "signature"),
            b_plus=_int(_require(block, "b_plus", "manifold"), "b_plus"),
            gram=tuple(
                tuple(_int(x, "gram entry") for x in row) for row in gram
            ),
        ),
        {},
    )


def _class_from(block, key, manifold, named, what) -> HomologyClass:
    if key in block:
        vec = block[key]
        if not isinstance(vec, list):
            raise SchemaError(f"{what}: {key} must be a list")
        return manifold.cls([_int(x, f"{what} coordinate") for x in vec])
    cat_key = block.get("catalog_class")
    if cat_key in named:
        return named[cat_key]
    raise SchemaError(f"{what}: need {key} or a valid catalog_class")


def parse_pair(block: dict) -> tuple[PairXSigma, dict]:
    manifold, named = parse_manifold(_require(block, "manifold", "pair"))
    sig = _require(block, "sigma", "pair")
    sigma_class = _class_from(sig, "vector", manifold, named, "sigma")
    genus = _int(_require(sig, "genus", "sigma"), "genus")
    bpc = _int(_require(sig, "b_plus_complement", "sigma"), "b_plus_complement")
    pair = build_pair(manifold, sigma_class, genus, bpc)
    return pair, named


def parse_spinc_list(doc: dict, pair: PairXSigma, named: dict) -> list[tuple[str, LogSpinc]]:
    out = []
    entries = doc.get("spinc", [])
    if not isinstance(entries, list):
        raise SchemaError("spinc block must be a list")
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise SchemaError(f"spinc[{i}] must be an object")
        label = str(entry.get("label", f"s{i}"))
        if "c1L_vector" in entry:
            s = log_spinc_from_c1(
                pair, _class_from(entry, "c1L_vector", pair.manifold, named, "spinc")
            )
        elif "twisting_vector" in entry:
            e = _class_from(entry, "twisting_vector", pair.manifold, named, "spinc")
            if "canonical_vector" in entry:
                k = pair.manifold.cls(
                    [_int(x, "canonical coordinate") for x in entry["canonical_vector"]]
                )
            elif "canonical" in named:
                k = named["canonical"]
            else:
                raise SchemaError(
                    f"spinc[{i}]: twisting requires canonical_vector "
                    "(or a catalog manifold)"
                )
            s = log_spinc_from_twisting(pair, k, e)
        else:
            raise SchemaError(f"spinc[{i}]: need c1L_vector or twisting_vector")
        out.append((label, s))
    return out


def parse_nu(doc: dict, genus: int) -> NuZeroSet | None:
    block = doc.get("nu")
    if block is None:
        return None
    zeros = _require(block, "zeros", "nu")
    if not isinstance(zeros, dict):
        raise SchemaError("nu.zeros must map labels to multiplicities")
    return NuZeroSet(
        genus=genus,
        zeros=tuple((str(k), _int(v, "nu multiplicity")) for k, v in zeros.items()),
    )


def parse_vortex(doc: dict) -> VortexProblem | None:
    block = doc.get("vortex")
    if block is None:
        return None
    modulus = _require(block, "modulus", "vortex")
    if not (isinstance(modulus, list) and len(modulus) == 2):
        raise SchemaError("vortex.modulus must be [re, im]")
    geom = TorusGeometry(
        modulus=complex(float(modulus[0]), float(modulus[1])),
        n=_int(_require(block, "N", "vortex"), "vortex N"),
        area=float(_require(block, "area", "vortex")),
    )
    divisor = block.get("divisor", [])
    if not isinstance(divisor, list):
        raise SchemaError("vortex.divisor must be a list of [x, y] points")
    return VortexProblem(
        geometry=geom,
        divisor=tuple((float(p[0]), float(p[1])) for p in divisor),
        tau=float(_require(block, "tau", "vortex")),
        tolerance=float(block.get("tolerance", 1e-10)),
        max_iterations=int(block.get("max_iterations", 50)),
    )


def parse_sum_problem(doc: dict):
    """(SplitProblem, spinc per side, tables, signs, nu, glued)."""
    pair1, named1 = parse_pair(_require(doc, "pair1", "sum"))
    pair2, named2 = parse_pair(_require(doc, "pair2", "sum"))
    residues = _require(doc, "residues", "sum")
    if not (isinstance(residues, list) and len(residues) == 2):
        raise SchemaError("residues must be [r1, r2]")
    sp = SplitProblem(
        pair1, pair2, (int(residues[0]), int(residues[1]))
    )
    nu = parse_nu(doc, sp.genus)

    tables_block = doc.get("tables")
    table = None
    if tables_block is not None:
        if "path" in tables_block:
            table = RelativeInvariantTable.from_csv(tables_block["path"])
        elif "entries" in tables_block:
            entries = {}
            for row in tables_block["entries"]:
                if not (isinstance(row, list) and len(row) == 4):
                    raise SchemaError("tables.entries rows must be [side, m, q, value]")
                entries[(int(row[0]), int(row[1]), str(row[2]))] = int(row[3])
            table = RelativeInvariantTable(entries)
        else:
            raise SchemaError("tables block needs 'path' or 'entries'")

    signs = None
    if "signs" in doc:
        signs = {}
        for row in doc["signs"]:
            if not (isinstance(row, list) and len(row) == 4):
                raise SchemaError("signs rows must be [m1, m2, q, sign]")
            signs[(int(row[0]), int(row[1]), str(row[2]))] = int(row[3])

    glued = None
    if "glued" in doc:
        g = doc["glued"]
        glued = GluedData(
            euler=_int(_require(g, "euler", "glued"), "glued euler"),
            signature=_int(_require(g, "signature", "glued"), "glued signature"),
            c1_sq=_int(_require(g, "c1_sq", "glued"), "glued c1_sq"),
        )
    spincs1 = parse_spinc_list({"spinc": doc.get("spinc1", [])}, pair1, named1)
    spincs2 = parse_spinc_list({"spinc": doc.get("spinc2", [])}, pair2, named2)
    return sp, spincs1, spincs2, table, signs, nu, glued


def normalize(doc: dict) -> dict:
    """Canonical form: sorted keys, defaults materialised where cheap."""

    def norm(value):
        if isinstance(value, dict):
            return {k: norm(value[k]) for k in sorted(value)}
        if isinstance(value, list):
            return [norm(v) for v in value]
        if isinstance(value, Fraction):
            return str(value)
        return value

    return norm(doc)


def dump_normalized(doc: dict) -> str:
    return json.dumps(normalize(doc), indent=2, sort_keys=True) + "\n"
