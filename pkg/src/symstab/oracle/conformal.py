"""Finite-difference checks of the conformal Hessian on round spheres.

A radial conformal metric ``e^(2u) g0`` on the unit ``S^n`` is the warped
product ``dr^2 + phi(r)^2 g_{S^(n-1)}`` with ``dr = e^u dtheta`` and
``phi = e^u sin(theta)``.  Its curvature has two sectional values,

    K_rad = -phi_rr / phi       = e^(-2u) (1 - u'' - u' cot)
    K_tan = (1 - phi_r^2)/phi^2 = e^(-2u) (1 - u'^2 - 2 u' cot)

(primes in ``theta``), which is all the functional needs.  The full tensor
is also available through the conformal-change formula
``R~ = e^(2u) (R - A o g)`` with ``A = Ddu - du du + |du|^2 g / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..tensor_core import CurvTensor, constant_curvature_tensor, kulkarni_nomizu
from .zonal import ZonalFunction, zonal_integral

__all__ = [
    "ConformalPath",
    "RadialProfile",
    "InadmissibleStep",
    "RoundoffDominated",
    "conformal_curvature",
    "warped_sectional",
    "functional_value",
    "fd_second_derivative",
    "fd_first_derivative",
    "POLE_MARGIN",
]

POLE_MARGIN = 1e-3
DEFAULT_STEPS = (1e-2, 5e-3, 2.5e-3)


class InadmissibleStep(ValueError):
    pass


class RoundoffDominated(RuntimeError):
    pass


@dataclass(frozen=True)
class RadialProfile:
    """Values of ``u``, ``u'``, ``u''`` and ``u'/sin(theta)`` at some points."""

    u: np.ndarray
    du: np.ndarray
    ddu: np.ndarray
    du_over_sin: np.ndarray


@dataclass(frozen=True)
class ConformalPath:
    """``g_t = (1 + t f) g0`` (``"linear"``) or ``g_t = e^(t f) g0`` (``"exponential"``).

    Both have velocity ``f g0`` at ``t = 0``.
    """

    f: ZonalFunction
    parameterization: str = "linear"

    def __post_init__(self):
        if self.parameterization not in ("linear", "exponential"):
            raise ValueError(f"unknown parameterization {self.parameterization!r}")

    @property
    def n(self) -> int:
        return self.f.n

    def check_admissible(self, t: float) -> None:
        if abs(t) * self.f.max_abs() > 0.5:
            raise InadmissibleStep(f"t = {t} violates 1 + t f >= 1/2")

    def log_factor(self, t: float, theta) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``log w`` and its theta-derivatives for ``g_t = w g0`` (plus ``(log w)'/sin``)."""
        f = self.f
        v, d1, d2, d1s = f.value(theta), f.d1(theta), f.d2(theta), f.d1_over_sin(theta)
        if self.parameterization == "exponential":
            return t * v, t * d1, t * d2, t * d1s
        w = 1.0 + t * v
        return np.log(w), t * d1 / w, t * d2 / w - (t * d1 / w) ** 2, t * d1s / w

    def profile(self, t: float, theta) -> RadialProfile:
        lw, dlw, ddlw, dlws = self.log_factor(t, theta)
        return RadialProfile(0.5 * lw, 0.5 * dlw, 0.5 * ddlw, 0.5 * dlws)


def conformal_curvature(n: int, u: float, du: float, ddu: float, theta: float,
                        du_over_sin: float | None = None) -> CurvTensor:
    """Curvature of ``e^(2u) g0`` on the unit ``S^n`` (u radial) in a ``g~``-orthonormal frame.

    Frame index 0 is the radial direction.
    """
    if not (POLE_MARGIN <= theta <= math.pi - POLE_MARGIN):
        raise ValueError(f"theta = {theta} is within {POLE_MARGIN} of a pole")
    cot_term = (du_over_sin if du_over_sin is not None else du / math.sin(theta)) * math.cos(theta)
    A = np.full(n, cot_term + 0.5 * du * du)
    A[0] = ddu - 0.5 * du * du
    g = np.eye(n)
    R0 = constant_curvature_tensor(n, 1.0).entries
    return CurvTensor(math.exp(-2.0 * u) * (R0 - kulkarni_nomizu(np.diag(A), g)))


def warped_sectional(prof: RadialProfile, theta) -> tuple[np.ndarray, np.ndarray]:
    cot = prof.du_over_sin * np.cos(theta)
    e = np.exp(-2.0 * prof.u)
    k_rad = e * (1.0 - prof.ddu - cot)
    k_tan = e * (1.0 - prof.du ** 2 - 2.0 * cot)
    return k_rad, k_tan


def _density(path: ConformalPath, t: float, p: float, theta) -> np.ndarray:
    n = path.n
    prof = path.profile(t, theta)
    k_rad, k_tan = warped_sectional(prof, theta)
    norm_sq = 4.0 * ((n - 1) * k_rad ** 2 + 0.5 * (n - 1) * (n - 2) * k_tan ** 2)
    return norm_sq ** (p / 2) * np.exp(n * prof.u)


def functional_value(path: ConformalPath, t: float, p: float, nodes: int | None = None) -> float:
    """``int |R(g_t)|^p dv_{g_t}`` by zonal Gauss-Legendre quadrature."""
    path.check_admissible(t)
    return zonal_integral(path.n, lambda th: _density(path, t, p, th), nodes)


def _require_half_dim(path: ConformalPath, p: float) -> None:
    if p != path.n / 2:
        raise ValueError(f"finite differences are set up for p = n/2 = {path.n / 2}, got {p}")


def fd_second_derivative(path: ConformalPath, p: float, steps: Sequence[float] = DEFAULT_STEPS,
                         nodes: int | None = None) -> tuple[float, float]:
    """Richardson-extrapolated central second difference of ``F(t)`` at 0.

    Returns ``(estimate, error_bar)``; the error bar is the change between the
    last two extrapolation levels.
    """
    _require_half_dim(path, p)
    steps = sorted((float(h) for h in steps), reverse=True)
    if len(steps) < 2:
        raise ValueError("need at least two step sizes")
    for h in steps:
        path.check_admissible(h)
    if path.f.amplitude == 0:
        return 0.0, 0.0
    F0 = functional_value(path, 0.0, p, nodes)
    D = [
        (functional_value(path, h, p, nodes) - 2.0 * F0 + functional_value(path, -h, p, nodes)) / (h * h)
        for h in steps
    ]
    diffs = np.abs(np.diff(D))
    noise = 1e-13 * abs(F0) / steps[-1] ** 2
    if len(diffs) >= 2 and np.all(diffs > noise) and np.any(diffs[1:] > diffs[:-1]):
        raise RoundoffDominated(f"second differences do not converge: {D}")

    table = [D]
    for level in range(1, len(steps)):
        prev = table[-1]
        order = 2 * level
        row = []
        for i in range(len(prev) - 1):
            r = (steps[i] / steps[i + level]) ** order
            row.append((r * prev[i + 1] - prev[i]) / (r - 1.0))
        table.append(row)
    estimate = table[-1][-1]
    error = abs(estimate - table[-2][-1])
    return float(estimate), float(error)


def fd_first_derivative(path: ConformalPath, p: float, step: float = DEFAULT_STEPS[0],
                        nodes: int | None = None) -> float:
    """Central first difference of ``F(t)`` at 0, one Richardson level."""
    _require_half_dim(path, p)
    path.check_admissible(step)
    if path.f.amplitude == 0:
        return 0.0

    def central(h):
        return (functional_value(path, h, p, nodes) - functional_value(path, -h, p, nodes)) / (2.0 * h)

    return float((4.0 * central(step / 2) - central(step)) / 3.0)
