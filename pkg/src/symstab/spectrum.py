"""Laplace eigenvalues of symmetric spaces from Casimir values.

For a compact symmetric space with metric ``-B`` the Laplacian acts on the
matrix coefficients of a spherical representation of highest weight ``w`` by
the Casimir value ``<w, w + 2 rho>`` (Killing normalization).  Spherical
weights form a monoid generated by the weights listed in the catalog.
Constant-curvature spaces use ``k (k + n - 1) kappa`` directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .roots import casimir, root_system

__all__ = [
    "SphericalWeights",
    "MissingSpectralData",
    "Lambda1",
    "lambda1",
    "spectrum_sample",
]


class MissingSpectralData(ValueError):
    pass


@dataclass(frozen=True)
class SphericalWeights:
    """Generators of the spherical-weight monoid, in fundamental-weight coordinates."""

    root_system: str
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rs = root_system(self.root_system)
        if not self.generators:
            raise ValueError("spherical weight list is empty")
        for w in self.generators:
            if len(w) != rs.rank or any(int(c) != c or c < 0 for c in w):
                raise ValueError(f"{list(w)} is not a dominant weight of {self.root_system}")
            if not any(w):
                raise ValueError("the zero weight is not a generator")

    def casimir_of(self, coeffs: Sequence[int]) -> float:
        w = np.asarray(coeffs) @ np.asarray(self.generators)
        return casimir(w, self.root_system)


@dataclass(frozen=True)
class Lambda1:
    value: float
    over_s: float
    source: str


def _is_sphere_like(model) -> bool:
    return model.source == "ConstantCurvature" and model.kappa is not None and model.kappa > 0


def _dedupe(values: list[float], rtol: float = 1e-12) -> list[float]:
    out: list[float] = []
    for v in sorted(values):
        if not out or abs(v - out[-1]) > rtol * max(abs(v), 1.0):
            out.append(v)
    return out


def _casimir_sample(sw: SphericalWeights, count: int) -> list[float]:
    rs = root_system(sw.root_system)
    gens = [rs.weight_vector(g) for g in sw.generators]
    r = len(gens)
    min_sq = min(rs.ip(g, g) for g in gens)
    min_rho = min(rs.ip(g, rs.rho) for g in gens)

    def lower_bound(total: int) -> float:
        # cross terms are >= 0 for dominant weights; sum m_i^2 >= total^2 / r
        return min_sq * total * total / r + 2.0 * total * min_rho

    bound = 1
    while True:
        vals = []
        for total in range(1, bound + 1):
            for combo in _compositions(total, r):
                vals.append(sw.casimir_of(combo))
        distinct = _dedupe(vals)
        if len(distinct) >= count and lower_bound(bound + 1) > distinct[count - 1]:
            return distinct[:count]
        bound += 1


def _compositions(total: int, parts: int):
    """Nonnegative integer vectors of length ``parts`` summing to ``total``."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def spectrum_sample(model, count: int) -> list[float]:
    """The ``count`` smallest distinct positive Laplace eigenvalues, ascending."""
    if int(count) != count or count < 1:
        raise ValueError("count must be a positive integer")
    count = int(count)
    if _is_sphere_like(model):
        n, kappa = model.n, model.kappa
        return [k * (k + n - 1) * kappa for k in range(1, count + 1)]
    sw = model.spectral
    if sw is None:
        raise MissingSpectralData(f"{model.id}: no spherical-weight data")
    return [v / model.scale for v in _casimir_sample(sw, count)]


def lambda1(model) -> Lambda1:
    """First positive eigenvalue with ``lambda1 / s``.

    Computed from spherical weights when available; otherwise taken from a
    cataloged ``lambda1_over_s``.
    """
    if _is_sphere_like(model) or model.spectral is not None:
        value = spectrum_sample(model, 1)[0]
        return Lambda1(value, value / model.s, "casimir" if model.spectral is not None else "sphere")
    ratio = model.cataloged.get("lambda1_over_s") if model.cataloged else None
    if ratio is None:
        raise MissingSpectralData(f"{model.id}: no spectral data for lambda1")
    return Lambda1(ratio * model.s, ratio, "catalog")
