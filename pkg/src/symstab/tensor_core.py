"""Pointwise algebra of curvature tensors in an orthonormal frame.

Index convention: ``R[i, j, k, l] = g(R(e_i, e_j) e_k, e_l)`` so that the
sectional curvature of the plane spanned by orthonormal ``x, y`` is
``R(x, y, y, x)``.  With this choice a space of constant curvature ``kappa``
has ``R = kappa * (d_il d_jk - d_ik d_jl)``, ``Ric = (n - 1) kappa g`` and
``s = n (n - 1) kappa``.

The norm is the plain sum of squares over all four indices, no combinatorial
factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CurvTensor",
    "SymTwoTensor",
    "NotEinsteinError",
    "constant_curvature_tensor",
    "kulkarni_nomizu",
    "validate_symmetries",
    "ricci_scalar",
    "norm_sq",
    "inner",
    "r_ring",
    "weyl_split",
    "einstein_deviation",
]

EINSTEIN_RTOL = 1e-8


class NotEinsteinError(ValueError):
    """Raised when an operation needs Ric proportional to g and it is not."""


@dataclass(frozen=True)
class CurvTensor:
    """Algebraic curvature tensor at a point, dense ``(n, n, n, n)`` storage."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 4 or len(set(arr.shape)) != 1:
            raise ValueError(f"expected an (n, n, n, n) array, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other: "CurvTensor") -> "CurvTensor":
        return CurvTensor(self.entries + other.entries)

    def __sub__(self, other: "CurvTensor") -> "CurvTensor":
        return CurvTensor(self.entries - other.entries)

    def __mul__(self, c: float) -> "CurvTensor":
        return CurvTensor(c * self.entries)

    __rmul__ = __mul__


@dataclass(frozen=True)
class SymTwoTensor:
    """Symmetric 2-tensor in an orthonormal frame."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries))


def kulkarni_nomizu(h: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Kulkarni-Nomizu product in the sign convention of this module.

    ``(h o k)(x,y,z,w) = h(x,w)k(y,z) + h(y,z)k(x,w) - h(x,z)k(y,w) - h(y,w)k(x,z)``,
    so that ``g o g / 2`` is the unit-curvature tensor.
    """
    h = np.asarray(h, dtype=float)
    k = np.asarray(k, dtype=float)
    return (
        np.einsum("il,jk->ijkl", h, k)
        + np.einsum("jk,il->ijkl", h, k)
        - np.einsum("ik,jl->ijkl", h, k)
        - np.einsum("jl,ik->ijkl", h, k)
    )


def constant_curvature_tensor(n: int, kappa: float = 1.0) -> CurvTensor:
    """Curvature tensor of constant sectional curvature ``kappa`` in dimension ``n``."""
    if int(n) != n or n < 3:
        raise ValueError(f"dimension must be an integer >= 3, got {n}")
    eye = np.eye(int(n))
    return CurvTensor(0.5 * kappa * kulkarni_nomizu(eye, eye))


def validate_symmetries(R: CurvTensor, tol: float = 1e-12) -> list[str]:
    """Names of the curvature-tensor identities that fail by more than ``tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    T = R.entries
    checks = {
        "antisymmetry_first_pair": T + T.transpose(1, 0, 2, 3),
        "antisymmetry_second_pair": T + T.transpose(0, 1, 3, 2),
        "pair_symmetry": T - T.transpose(2, 3, 0, 1),
        # R_ijkl + R_iklj + R_iljk
        "first_bianchi": T + T.transpose(0, 2, 3, 1) + T.transpose(0, 3, 1, 2),
    }
    return [name for name, resid in checks.items() if resid.size and np.max(np.abs(resid)) > tol]


def ricci_scalar(R: CurvTensor) -> tuple[SymTwoTensor, float]:
    """Ricci tensor ``r(x, y) = sum_i R(x, e_i, e_i, y)`` and its trace."""
    ric = np.einsum("xiiy->xy", R.entries)
    ric = 0.5 * (ric + ric.T)
    return SymTwoTensor(ric), float(np.trace(ric))


def norm_sq(R: CurvTensor) -> float:
    return float(np.sum(R.entries * R.entries))


def inner(R1: CurvTensor, R2: CurvTensor) -> float:
    """Frame-component inner product."""
    return float(np.sum(R1.entries * R2.entries))


def r_ring(R: CurvTensor) -> SymTwoTensor:
    """``R°(x, y) = sum_{ijk} R(x, e_i, e_j, e_k) R(y, e_i, e_j, e_k)``."""
    T = R.entries
    return SymTwoTensor(np.einsum("xijk,yijk->xy", T, T))


def einstein_deviation(R: CurvTensor) -> float:
    """``max |Ric - (s/n) g|`` over frame components."""
    ric, s = ricci_scalar(R)
    return float(np.max(np.abs(ric.entries - (s / R.n) * np.eye(R.n))))


def weyl_split(R: CurvTensor, rtol: float = EINSTEIN_RTOL) -> tuple[CurvTensor, CurvTensor, float]:
    """Split an Einstein curvature tensor as ``s/(n(n-1)) I + W``.

    Returns ``(sphere_part, W, s**2 / |R|**2)``.  Raises :class:`NotEinsteinError`
    when the Ricci tensor is not proportional to the identity within
    ``rtol * |s/n|``.
    """
    n = R.n
    _, s = ricci_scalar(R)
    total = norm_sq(R)
    if total == 0.0:
        raise ValueError("zero curvature tensor has no Weyl ratio")
    dev = einstein_deviation(R)
    if dev > rtol * abs(s / n):
        raise NotEinsteinError(
            f"Ricci tensor deviates from (s/n) g by {dev:.3e} (allowed {rtol * abs(s / n):.3e})"
        )
    sphere = constant_curvature_tensor(n, s / (n * (n - 1)))
    return sphere, R - sphere, s * s / total
