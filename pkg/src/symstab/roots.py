"""Root systems of compact simple Lie algebras in Killing normalization.

Simple roots follow the Bourbaki plates.  The ambient Euclidean inner
product is rescaled so that the highest root ``theta`` satisfies
``<theta, theta + 2 rho> = 1``: this is the inner product dual to the Killing
form, under which the adjoint Casimir equals one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

__all__ = ["RootSystemData", "root_system", "casimir", "NonDominantWeightError"]


class NonDominantWeightError(ValueError):
    pass


def _e(dim: int, i: int) -> np.ndarray:
    v = np.zeros(dim)
    v[i] = 1.0
    return v


def _simple_roots(kind: str, r: int) -> np.ndarray:
    if kind == "A":
        if r < 1:
            raise ValueError("A_r needs r >= 1")
        return np.array([_e(r + 1, i) - _e(r + 1, i + 1) for i in range(r)])
    if kind in "BCD":
        minimum = {"B": 2, "C": 2, "D": 3}[kind]
        if r < minimum:
            raise ValueError(f"{kind}_r needs r >= {minimum}")
        roots = [_e(r, i) - _e(r, i + 1) for i in range(r - 1)]
        last = {"B": _e(r, r - 1), "C": 2 * _e(r, r - 1), "D": _e(r, r - 2) + _e(r, r - 1)}[kind]
        return np.array(roots + [last])
    if kind == "F" and r == 4:
        e = lambda i: _e(4, i - 1)  # noqa: E731
        return np.array([e(2) - e(3), e(3) - e(4), e(4), 0.5 * (e(1) - e(2) - e(3) - e(4))])
    if kind == "E" and r == 6:
        e = lambda i: _e(8, i - 1)  # noqa: E731
        a1 = 0.5 * (e(1) + e(8) - e(2) - e(3) - e(4) - e(5) - e(6) - e(7))
        return np.array([a1, e(1) + e(2), e(2) - e(1), e(3) - e(2), e(4) - e(3), e(5) - e(4)])
    raise ValueError(f"unsupported root system {kind}{r}")


def _key(v: np.ndarray) -> tuple:
    return tuple(np.round(v, 9) + 0.0)


@dataclass(frozen=True)
class RootSystemData:
    """Root data with the Killing-normalized inner product folded into ``gram``.

    ``simple`` rows are simple roots in ambient coordinates; ``gram`` is the
    inner product on ambient coordinates (a multiple of the identity);
    ``fundamental`` rows are fundamental weights; ``positive_coeffs`` are the
    positive roots in the simple-root basis.
    """

    label: str
    simple: np.ndarray
    gram: np.ndarray
    positive: np.ndarray
    positive_coeffs: np.ndarray
    rho: np.ndarray
    fundamental: np.ndarray

    @property
    def rank(self) -> int:
        return self.simple.shape[0]

    def ip(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(x @ self.gram @ y)

    def cartan_matrix(self) -> np.ndarray:
        G = self.simple @ self.gram @ self.simple.T
        return 2.0 * G / np.diag(G)[None, :]

    def highest_root(self) -> np.ndarray:
        heights = self.positive_coeffs.sum(axis=1)
        return self.positive[int(np.argmax(heights))]

    def weight_vector(self, coords: Sequence[int]) -> np.ndarray:
        """Ambient vector of the weight with the given fundamental-weight coordinates."""
        c = np.asarray(coords, dtype=float)
        if c.shape != (self.rank,):
            raise ValueError(f"{self.label} weights have {self.rank} coordinates, got {len(c)}")
        return c @ self.fundamental


@lru_cache(maxsize=None)
def root_system(label: str) -> RootSystemData:
    """Root data for labels such as ``"A2"``, ``"C3"``, ``"E6"``, ``"F4"``."""
    m = re.fullmatch(r"([A-G])(\d+)", label.strip())
    if not m:
        raise ValueError(f"bad root system label {label!r}")
    kind, r = m.group(1), int(m.group(2))
    simple = _simple_roots(kind, r)

    def reflect(v, a):
        return v - 2.0 * (v @ a) / (a @ a) * a

    roots = {_key(a): a for a in simple}
    frontier = list(simple)
    while frontier:
        fresh = []
        for v in frontier:
            for a in simple:
                w = reflect(v, a)
                k = _key(w)
                if k not in roots:
                    roots[k] = w
                    fresh.append(w)
        frontier = fresh
    allr = np.array(list(roots.values()))
    coeffs, *_ = np.linalg.lstsq(simple.T, allr.T, rcond=None)
    coeffs = np.round(coeffs.T, 9)
    pos_mask = np.all(coeffs >= 0, axis=1)
    positive, pos_coeffs = allr[pos_mask], coeffs[pos_mask]
    if 2 * len(positive) != len(allr):
        raise RuntimeError(f"{label}: root closure is inconsistent")

    order = np.lexsort((-pos_coeffs).T[::-1])
    positive, pos_coeffs = positive[order], pos_coeffs[order]
    rho = 0.5 * positive.sum(axis=0)

    G0 = simple @ simple.T
    D = np.diag(2.0 / np.diag(G0))
    M = np.linalg.inv(G0 @ D)
    fundamental = M @ simple

    theta = positive[int(np.argmax(pos_coeffs.sum(axis=1)))]
    scale = 1.0 / float(theta @ (theta + 2 * rho))
    gram = scale * np.eye(simple.shape[1])
    return RootSystemData(label, simple, gram, positive, pos_coeffs, rho, fundamental)


def casimir(weight: Sequence[int], roots: RootSystemData | str) -> float:
    """Casimir eigenvalue ``<w, w + 2 rho>`` for a dominant weight in fundamental coordinates."""
    rs = root_system(roots) if isinstance(roots, str) else roots
    c = np.asarray(weight, dtype=float)
    if c.shape != (rs.rank,):
        raise ValueError(f"{rs.label} weights have {rs.rank} coordinates, got {len(c)}")
    if np.any(c < 0) or np.any(c != np.round(c)):
        raise NonDominantWeightError(f"weight {list(weight)} is not dominant integral")
    w = rs.weight_vector(c)
    return rs.ip(w, w + 2.0 * rs.rho)
