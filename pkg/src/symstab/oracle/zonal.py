"""Zonal eigenfunctions and quadrature on round spheres."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import eval_gegenbauer

__all__ = [
    "ZonalFunction",
    "QuadratureError",
    "sphere_volume",
    "quadrature_nodes",
    "zonal_integral",
    "default_resolution",
]

RESOLUTION_ENV = "SYMSTAB_QUAD_NODES"
DEFAULT_NODES = 512
PANEL_NODES = 32


class QuadratureError(RuntimeError):
    pass


def default_resolution() -> int:
    raw = os.environ.get(RESOLUTION_ENV)
    if not raw:
        return DEFAULT_NODES
    value = int(raw)
    if value < 2 * PANEL_NODES:
        raise ValueError(f"{RESOLUTION_ENV} must be at least {2 * PANEL_NODES}")
    return value


def sphere_volume(m: int) -> float:
    """Volume of the unit round ``S^m``."""
    return 2.0 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


def quadrature_nodes(total: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on ``[0, pi]``."""
    panels = max(1, total // PANEL_NODES)
    x, w = np.polynomial.legendre.leggauss(PANEL_NODES)
    edges = np.linspace(0.0, math.pi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def zonal_integral(n: int, integrand: Callable[[np.ndarray], np.ndarray], nodes: int | None = None,
                   rtol: float = 1e-10) -> float:
    """``int_{S^n} F dv`` for a zonal integrand ``F(theta)``.

    The estimate at ``nodes`` is compared with half the resolution and a
    :class:`QuadratureError` is raised when they disagree by more than
    ``rtol`` times the integral of ``|F|``.
    """
    nodes = default_resolution() if nodes is None else nodes
    area = sphere_volume(n - 1)

    def at(total):
        th, w = quadrature_nodes(total)
        vals = w * integrand(th) * np.sin(th) ** (n - 1)
        return area * float(np.sum(vals)), area * float(np.sum(np.abs(vals)))

    fine, scale = at(nodes)
    coarse, _ = at(max(PANEL_NODES, nodes // 2))
    if abs(fine - coarse) > rtol * scale:
        raise QuadratureError(f"quadrature not converged: {fine!r} vs {coarse!r} at half resolution")
    return fine


@dataclass(frozen=True)
class ZonalFunction:
    """``f(theta) = amplitude * C_k(cos theta) / C_k(1)`` on the unit ``S^n``.

    ``C_k`` is the Gegenbauer polynomial of index ``(n-1)/2``; ``Delta f = k(k+n-1) f``
    with ``Delta = -tr Ddf``.
    """

    n: int
    k: int
    amplitude: float = 1.0

    def __post_init__(self):
        if self.n < 2 or self.k < 0:
            raise ValueError("need n >= 2 and k >= 0")

    @property
    def alpha(self) -> float:
        return (self.n - 1) / 2

    @property
    def eigenvalue(self) -> float:
        return float(self.k * (self.k + self.n - 1))

    @property
    def _norm(self) -> float:
        return self.amplitude / float(eval_gegenbauer(self.k, self.alpha, 1.0))

    def _c(self, order: int, x):
        """``order``-th derivative of ``C_k`` in ``x``."""
        k, a = self.k - order, self.alpha + order
        if k < 0:
            return np.zeros_like(np.asarray(x, dtype=float))
        factor = 1.0
        for j in range(order):
            factor *= 2.0 * (self.alpha + j)
        return factor * eval_gegenbauer(k, a, x)

    def value(self, theta):
        return self._norm * self._c(0, np.cos(theta))

    def d1(self, theta):
        return -self._norm * np.sin(theta) * self._c(1, np.cos(theta))

    def d1_over_sin(self, theta):
        """``f'(theta) / sin(theta)``, regular at the poles."""
        return -self._norm * self._c(1, np.cos(theta))

    def d2(self, theta):
        x = np.cos(theta)
        return self._norm * (np.sin(theta) ** 2 * self._c(2, x) - x * self._c(1, x))

    def max_abs(self) -> float:
        return abs(self.amplitude)

    def laplacian(self, theta):
        """``Delta f = -(f'' + (n-1) cot(theta) f')``."""
        return -(self.d2(theta) + (self.n - 1) * np.cos(theta) * self.d1_over_sin(theta))

    def eigen_residual(self, theta) -> float:
        th = np.asarray(theta, dtype=float)
        return float(np.max(np.abs(self.laplacian(th) - self.eigenvalue * self.value(th))))

    def norm_sq(self, nodes: int | None = None) -> float:
        return zonal_integral(self.n, lambda th: self.value(th) ** 2, nodes)

    def mean(self, nodes: int | None = None) -> float:
        return zonal_integral(self.n, self.value, nodes)
