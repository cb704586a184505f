"""Catalog file ingestion and model assembly."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import jsonschema

from .spaces import (
    CATALOGED_FAMILIES,
    SpaceSpec,
    SymmetricSpaceModel,
    catalog_invariants,
    curvature_of_space,
)
from .spectrum import SphericalWeights

__all__ = ["CatalogEntry", "Catalog", "CatalogError", "load_catalog", "default_catalog_path", "build_model"]

EXPECTED_VERDICTS = ("UnstableConformal", "StableConformal", "StableConformalDegenerate")

FAMILY_ARITY = {
    "SU": 1, "Sp": 1, "Spin": 1, "AII": 1, "CII": 2,
    "EIV": 0, "FII": 0, "sphere": 1, "hyperbolic": 1,
}

SCHEMA = {
    "type": "object",
    "required": ["entries"],
    "properties": {
        "schema_version": {"type": "integer"},
        "entries": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "family", "params", "dim"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "family": {"enum": sorted(FAMILY_ARITY)},
                    "params": {"type": "array", "items": {"type": "integer"}},
                    "dim": {"type": "integer", "minimum": 3},
                    "lambda1_over_s": {"type": "number"},
                    "s_sq_over_normSqR": {"type": "number", "exclusiveMinimum": 0},
                    "provenance": {"type": "string"},
                    "expectedVerdict": {"enum": list(EXPECTED_VERDICTS)},
                    "note": {"type": "string"},
                },
            },
        },
        "spherical_weights": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["root_system", "generators"],
                "additionalProperties": False,
                "properties": {
                    "root_system": {"type": "string"},
                    "generators": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    },
                },
            },
        },
    },
}


class CatalogError(ValueError):
    """Schema or consistency violation in a catalog file."""


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    family: str
    params: tuple[int, ...]
    dim: int
    lambda1_over_s: float | None = None
    s_sq_over_norm_sq_r: float | None = None
    provenance: str = ""
    expected_verdict: str | None = None
    note: str = ""
    weights: SphericalWeights | None = field(default=None, compare=False)

    def spec(self) -> SpaceSpec:
        return SpaceSpec(self.id, self.family, self.params)


@dataclass(frozen=True)
class Catalog:
    entries: tuple[CatalogEntry, ...]
    path: str = ""

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def get(self, space_id: str) -> CatalogEntry:
        for e in self.entries:
            if e.id == space_id:
                return e
        raise KeyError(space_id)


def expected_dim(family: str, params: tuple[int, ...]) -> int:
    if family == "SU":
        (q,) = params
        return q * q - 1
    if family == "Sp":
        (q,) = params
        return q * (2 * q + 1)
    if family == "Spin":
        (q,) = params
        return q * (q - 1) // 2
    if family == "AII":
        (q,) = params
        m = q + 1
        return (2 * m) ** 2 - 1 - m * (2 * m + 1)
    if family == "CII":
        q, l = params
        return 4 * q * l
    if family == "EIV":
        return 78 - 52
    if family == "FII":
        return 52 - 36
    (n,) = params
    return n


_PARAM_MIN = {"SU": (3,), "Sp": (2,), "Spin": (5,), "AII": (1,), "CII": (1, 1), "sphere": (3,), "hyperbolic": (3,)}


def _entry_from(raw: dict, weights_raw: dict) -> CatalogEntry:
    fam = raw["family"]
    params = tuple(raw["params"])
    sid = raw["id"]
    if len(params) != FAMILY_ARITY[fam]:
        raise CatalogError(f"{sid}: family {fam} takes {FAMILY_ARITY[fam]} parameters")
    for value, low in zip(params, _PARAM_MIN.get(fam, ())):
        if value < low:
            raise CatalogError(f"{sid}: parameter {value} below supported minimum {low}")
    if fam == "Spin" and params[0] not in (5, 6):
        raise CatalogError(f"{sid}: only Spin(5) and Spin(6) are realized")
    if raw["dim"] != expected_dim(fam, params):
        raise CatalogError(f"{sid}: dim {raw['dim']} != {expected_dim(fam, params)}")
    has_ratio = "lambda1_over_s" in raw or "s_sq_over_normSqR" in raw
    if has_ratio != (fam in CATALOGED_FAMILIES):
        raise CatalogError(
            f"{sid}: cataloged ratios are allowed only (and required) for exceptional/hyperbolic entries"
        )
    if has_ratio and not raw.get("provenance", "").strip():
        raise CatalogError(f"{sid}: cataloged numbers need a provenance note")
    if fam in ("EIV", "FII") and not ("lambda1_over_s" in raw and "s_sq_over_normSqR" in raw):
        raise CatalogError(f"{sid}: exceptional entries need both lambda1_over_s and s_sq_over_normSqR")

    weights = None
    if sid in weights_raw:
        w = weights_raw[sid]
        try:
            weights = SphericalWeights(w["root_system"], tuple(tuple(g) for g in w["generators"]))
        except ValueError as exc:
            raise CatalogError(f"{sid}: {exc}") from exc
    elif fam not in ("sphere", "hyperbolic", "EIV", "FII"):
        raise CatalogError(f"{sid}: missing spherical-weight data")
    return CatalogEntry(
        id=sid, family=fam, params=params, dim=raw["dim"],
        lambda1_over_s=raw.get("lambda1_over_s"),
        s_sq_over_norm_sq_r=raw.get("s_sq_over_normSqR"),
        provenance=raw.get("provenance", ""),
        expected_verdict=raw.get("expectedVerdict"),
        note=raw.get("note", ""),
        weights=weights,
    )


def default_catalog_path() -> Path:
    return Path(str(resources.files("symstab") / "data" / "catalog.json"))


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Parse and validate a catalog file; the shipped catalog when ``path`` is ``None``."""
    path = default_catalog_path() if path is None else Path(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    if not text.strip():
        raise CatalogError(f"catalog {path} is empty")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog {path} is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise CatalogError(f"catalog schema violation: {exc.message}") from exc
    weights_raw = doc.get("spherical_weights", {})
    entries = [_entry_from(raw, weights_raw) for raw in doc["entries"]]
    ids = [e.id for e in entries]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise CatalogError(f"duplicate catalog ids: {dupes}")
    unknown = sorted(set(weights_raw) - set(ids))
    if unknown:
        raise CatalogError(f"spherical weights for unknown ids: {unknown}")
    return Catalog(tuple(entries), str(path))


def build_model(entry: CatalogEntry) -> SymmetricSpaceModel:
    """Model for a catalog entry with its spectral data attached."""
    if entry.family in CATALOGED_FAMILIES:
        model = catalog_invariants(entry)
    else:
        model = curvature_of_space(entry.spec())
        if model.n != entry.dim:
            raise CatalogError(f"{entry.id}: built dimension {model.n} != catalog dim {entry.dim}")
    return replace(model, spectral=entry.weights)
