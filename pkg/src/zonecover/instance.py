"""Reading and writing JSON instance files.

An instance looks like::

    {
      "dimension": 2,
      "zones": [{"normal": [0, 0, 1], "width": 0.5}],
      "caps": [{"center": [1, 0, 0], "radius": 0.3}],
      "great_spheres": [{"normal": [0, 1, 0]}],
      "points": [[1, 0, 0]]
    }

Zone sizes are full widths, angles are radians.  A report document written
by the CLI can be read back as an instance: generated instances are taken
from ``result.instance``, everything else from ``inputs``, and a reported
witness is appended to ``points``.
"""

from __future__ import annotations

import json
import logging
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .core import NORM_TOL, Cap, GreatSphere, UnitVector, Zone
from .errors import DimensionMismatch, InvalidGeometry, ZoneCoverError

log = logging.getLogger(__name__)

RENORMALIZE_WARN = 1e-6


class InstanceError(ZoneCoverError, ValueError):
    """Malformed instance file; the message names the offending field."""


@dataclass
class Instance:
    dimension: int
    zones: list[Zone] = field(default_factory=list)
    caps: list[Cap] = field(default_factory=list)
    great_spheres: list[GreatSphere] = field(default_factory=list)
    points: list[UnitVector] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def require(self, *sections: str) -> None:
        for name in sections:
            if not getattr(self, name):
                raise InstanceError(f"field '{name}': required by this command but missing or empty")


def _vector(raw, where: str, dimension: int, inst: Instance) -> UnitVector:
    if not isinstance(raw, list) or not all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in raw
    ):
        raise InstanceError(f"field '{where}': expected a list of numbers")
    if len(raw) != dimension + 1:
        raise DimensionMismatch(
            f"field '{where}': {len(raw)} coordinates but dimension {dimension} needs {dimension + 1}"
        )
    arr = np.array(raw, dtype=float)
    norm = float(np.linalg.norm(arr))
    if not norm > 0.0:
        raise InstanceError(f"field '{where}': zero vector")
    if abs(norm - 1.0) <= NORM_TOL:
        return UnitVector(tuple(arr))
    if abs(norm - 1.0) > RENORMALIZE_WARN:
        msg = f"field '{where}': norm {norm!r} normalized to 1"
        inst.warnings.append(msg)
        log.warning(msg)
    return UnitVector.normalized(arr)


def _angle(entry: dict, key: str, where: str, degrees: bool) -> float:
    if key not in entry:
        raise InstanceError(f"field '{where}.{key}': missing")
    value = entry[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise InstanceError(f"field '{where}.{key}': expected a number")
    value = float(value)
    return math.radians(value) if degrees else value


def _entries(doc: dict, key: str) -> list:
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise InstanceError(f"field '{key}': expected a list")
    for i, entry in enumerate(raw):
        if key != "points" and not isinstance(entry, dict):
            raise InstanceError(f"field '{key}[{i}]': expected an object")
    return raw


def parse_instance(doc, degrees: bool = False) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("top level: expected a JSON object")
    extra_points = []
    if "command" in doc and "inputs" in doc:
        result = doc.get("result") or {}
        extra = result.get("witness") or result.get("point")
        if extra is not None:
            extra_points.append(extra)
        doc = result.get("instance") or doc["inputs"]
        if not isinstance(doc, dict):
            raise InstanceError("report: 'inputs' is not an object")
    if "dimension" not in doc:
        raise InstanceError("field 'dimension': missing")
    dimension = doc["dimension"]
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        raise InstanceError("field 'dimension': expected an integer >= 1")

    inst = Instance(dimension)
    try:
        for i, entry in enumerate(_entries(doc, "zones")):
            where = f"zones[{i}]"
            normal = _vector(entry.get("normal"), f"{where}.normal", dimension, inst)
            inst.zones.append(Zone(normal, _angle(entry, "width", where, degrees) / 2.0))
        for i, entry in enumerate(_entries(doc, "caps")):
            where = f"caps[{i}]"
            center = _vector(entry.get("center"), f"{where}.center", dimension, inst)
            inst.caps.append(Cap(center, _angle(entry, "radius", where, degrees)))
        for i, entry in enumerate(_entries(doc, "great_spheres")):
            where = f"great_spheres[{i}]"
            inst.great_spheres.append(
                GreatSphere(_vector(entry.get("normal"), f"{where}.normal", dimension, inst))
            )
        for i, raw in enumerate(_entries(doc, "points") + extra_points):
            where = f"points[{i}]"
            inst.points.append(_vector(raw, where, dimension, inst))
    except InvalidGeometry as exc:
        raise InstanceError(f"field '{where}': {exc}") from exc
    return inst


def load_instance(path: str, degrees: bool = False) -> Instance:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_instance(doc, degrees)


def zone_to_dict(z: Zone) -> dict:
    return {"normal": list(z.normal.coords), "width": z.width}


def cap_to_dict(c: Cap) -> dict:
    return {"center": list(c.center.coords), "radius": c.radius}


def instance_to_dict(inst: Instance) -> dict:
    doc: dict = {"dimension": inst.dimension}
    if inst.zones:
        doc["zones"] = [zone_to_dict(z) for z in inst.zones]
    if inst.caps:
        doc["caps"] = [cap_to_dict(c) for c in inst.caps]
    if inst.great_spheres:
        doc["great_spheres"] = [{"normal": list(g.normal.coords)} for g in inst.great_spheres]
    if inst.points:
        doc["points"] = [list(p.coords) for p in inst.points]
    return doc
