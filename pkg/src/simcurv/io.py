"""File formats: complexes, point sets, stratum overrides, carrier sidecars.

One canonical JSON format for embedded complexes:

    {
      "version": 1,
      "ambient_dim": d,
      "vertices": [[x, ...], ...],          # row index == vertex id
      "maximal_simplices": [[i, ...], ...],
      "rank_overrides": [{"simplex": [...], "r": k}, ...]   # optional
    }

Coordinates may be JSON numbers or exact "p/q" strings.  Exact rationals in
reports are always serialized as "p/q" strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, Any

import numpy as np

from simcurv.complexes import Simplex, SimplicialComplex, as_simplex
from simcurv.geometry import EmbeddedComplex
from simcurv.subdivision import SubdivisionPair

FORMAT_VERSION = 1


class FileFormatError(ValueError):
    """Malformed or out-of-range content in an input file."""


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)


def parse_number(entry: Any) -> float:
    if isinstance(entry, str):
        return float(Fraction(entry))
    if isinstance(entry, (int, float)):
        return float(entry)
    raise FileFormatError(f"expected a number or 'p/q' string, got {entry!r}")


def complex_to_dict(embedded: EmbeddedComplex) -> dict:
    order = sorted(embedded.complex.vertices())
    position = {v: i for i, v in enumerate(order)}
    return {
        "version": FORMAT_VERSION,
        "ambient_dim": embedded.ambient_dim,
        "vertices": [[float(x) for x in embedded.coordinates[v]] for v in order],
        "maximal_simplices": sorted(
            sorted(position[v] for v in m) for m in embedded.complex.maximal
        ),
    }


def complex_from_dict(payload: dict) -> EmbeddedComplex:
    try:
        version = payload["version"]
        ambient = int(payload["ambient_dim"])
        vertices = payload["vertices"]
        maximal = payload["maximal_simplices"]
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"missing complex field: {exc}") from exc
    if version != FORMAT_VERSION:
        raise FileFormatError(f"unsupported format version {version}")
    coords = {}
    for i, row in enumerate(vertices):
        if len(row) != ambient:
            raise FileFormatError(
                f"vertex {i} has {len(row)} coordinates, expected {ambient}"
            )
        coords[i] = np.array([parse_number(x) for x in row])
    for m in maximal:
        for v in m:
            if not 0 <= int(v) < len(vertices):
                raise FileFormatError(f"simplex {m} references unknown vertex {v}")
    complex = SimplicialComplex(maximal)
    return EmbeddedComplex(complex, coords, ambient)


def overrides_from_payload(payload: Any) -> dict[Simplex, int]:
    overrides = {}
    for entry in payload:
        try:
            overrides[as_simplex(entry["simplex"])] = int(entry["r"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FileFormatError(f"bad override entry {entry!r}") from exc
    return overrides


def load_complex(stream: IO[str]) -> tuple[EmbeddedComplex, dict[Simplex, int]]:
    payload = json.load(stream)
    embedded = complex_from_dict(payload)
    overrides = overrides_from_payload(payload.get("rank_overrides", []))
    return embedded, overrides


def dump_complex(embedded: EmbeddedComplex, stream: IO[str]) -> None:
    json.dump(complex_to_dict(embedded), stream, indent=2)
    stream.write("\n")


def load_points(stream: IO[str]) -> np.ndarray:
    payload = json.load(stream)
    rows = payload["points"] if isinstance(payload, dict) else payload
    return np.array([[parse_number(x) for x in row] for row in rows])


def carrier_to_list(pair: SubdivisionPair) -> list[dict]:
    return [
        {"simplex": list(tau), "carrier": list(pair.carrier[tau])}
        for tau in pair.refined.complex.simplices()
    ]


def carrier_from_payload(payload: Any) -> dict[Simplex, Simplex]:
    carrier = {}
    for entry in payload:
        try:
            carrier[as_simplex(entry["simplex"])] = as_simplex(entry["carrier"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FileFormatError(f"bad carrier entry {entry!r}") from exc
    return carrier


def json_ready(value: Any) -> Any:
    """Recursively convert report values into JSON-serializable types."""
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, dict):
        return {k: json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_ready(v) for v in value]
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value
