"""Flat binary grid files: one text header line, then little-endian float64.

Layout: a single UTF-8 header line
    relsw-grid v1 N=<N> modulus=<re>,<im> area=<area> field=<name> convention=<string>
terminated by a newline, followed by N*N raw float64 values, row-major.
"""

from __future__ import annotations

import numpy as np

from .errors import SchemaError
from .vortex import TorusGeometry

CONVENTION = "i*int(F_A)=curvature_integral;(i/2pi)*int(F_A)=-d"


def write_grid(path, array: np.ndarray, geom: TorusGeometry, field: str) -> None:
    arr = np.ascontiguousarray(array, dtype="<f8")
    if arr.shape != (geom.n, geom.n):
        raise SchemaError(f"grid shape {arr.shape} != ({geom.n}, {geom.n})")
    header = (
        f"relsw-grid v1 N={geom.n} "
        f"modulus={geom.modulus.real!r},{geom.modulus.imag!r} "
        f"area={geom.area!r} field={field} convention={CONVENTION}\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("utf-8"))
        fh.write(arr.tobytes())


def read_grid(path) -> tuple[dict, np.ndarray]:
    with open(path, "rb") as fh:
        header = fh.readline().decode("utf-8").strip()
        payload = fh.read()
    fields = dict(
        item.split("=", 1) for item in header.split()[2:]
    )
    n = int(fields["N"])
    arr = np.frombuffer(payload, dtype="<f8")
    if arr.size != n * n:
        raise SchemaError(f"grid payload has {arr.size} values, expected {n * n}")
    return fields, arr.reshape(n, n)
