"""Coordinate curvature of diagonal metrics on the hyperspherical chart of ``S^n``.

Coordinates are ``(phi_1, ..., phi_n)`` with ``phi_1 = theta`` the colatitude
and the round metric ``sum_i (prod_{j<i} sin^2 phi_j) dphi_i^2``.  A radial
conformal factor ``w(theta)`` multiplies every diagonal entry.  Writing
``g_ii = exp(2 psi_i)`` all first and second metric derivatives are analytic
in ``psi``, so the Christoffel symbols and the (0,4) curvature at a point need
no spatial differencing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DiagonalMetricJet", "round_jet", "christoffel", "riemann_lowered", "norm_sq_lowered"]


@dataclass(frozen=True)
class DiagonalMetricJet:
    """Second-order jet of a diagonal metric at a point.

    ``g[i]`` is ``g_ii``; ``dg[a, i]`` is ``d_a g_ii``; ``ddg[a, b, i]`` is
    ``d_a d_b g_ii``.
    """

    g: np.ndarray
    dg: np.ndarray
    ddg: np.ndarray

    @property
    def n(self) -> int:
        return len(self.g)

    def full(self):
        """Dense ``(g, dg, ddg)`` with ``dg[a, i, j] = d_a g_ij``."""
        n = self.n
        eye = np.eye(n)
        return (
            np.diag(self.g),
            np.einsum("ai,ij->aij", self.dg, eye),
            np.einsum("abi,ij->abij", self.ddg, eye),
        )


def round_jet(phi, log_w=(0.0, 0.0, 0.0)) -> DiagonalMetricJet:
    """Jet of ``w(theta) g_round`` at ``phi``.

    ``log_w`` holds ``(log w, (log w)', (log w)'')`` at ``theta = phi[0]``.
    """
    phi = np.asarray(phi, dtype=float)
    n = len(phi)
    lw, dlw, ddlw = log_w
    psi = np.zeros(n)
    dpsi = np.zeros((n, n))  # dpsi[a, i] = d_a psi_i
    ddpsi = np.zeros((n, n, n))
    sin, cos = np.sin(phi), np.cos(phi)
    for i in range(n):
        psi[i] = 0.5 * lw + np.sum(np.log(sin[:i]))
        dpsi[0, i] = 0.5 * dlw
        ddpsi[0, 0, i] = 0.5 * ddlw
        for j in range(i):
            dpsi[j, i] += cos[j] / sin[j]
            ddpsi[j, j, i] += -1.0 / sin[j] ** 2
    g = np.exp(2.0 * psi)
    dg = 2.0 * dpsi * g[None, :]
    ddg = (2.0 * ddpsi + 4.0 * dpsi[:, None, :] * dpsi[None, :, :]) * g[None, None, :]
    return DiagonalMetricJet(g, dg, ddg)


def christoffel(jet: DiagonalMetricJet) -> np.ndarray:
    """``Gamma[k, i, j]`` with ``D_{d_i} d_j = Gamma^k_ij d_k``."""
    g, dg, _ = jet.full()
    lowered = 0.5 * (dg.transpose(2, 0, 1) + dg.transpose(2, 1, 0) - dg)  # [k, i, j]
    return np.einsum("kl,lij->kij", np.linalg.inv(g), lowered)


def riemann_lowered(jet: DiagonalMetricJet) -> np.ndarray:
    """Coordinate components ``R(d_i, d_j, d_k, d_l)`` with ``R(x, y, y, x)`` the sectional numerator."""
    g, _, ddg = jet.full()
    gam = christoffel(jet)
    # d_i Gamma_{l,jk} for the lowered symbols Gamma_{l,jk} = g(D_j d_k, d_l)
    d_low = 0.5 * (ddg + ddg.transpose(0, 2, 1, 3) - np.einsum("iljk->ijkl", ddg))
    low = np.einsum("lm,mjk->ljk", g, gam)
    # g(D_i D_j d_k, d_l) = d_i Gamma_{l,jk} - Gamma^m_jk Gamma_{m,il}
    term = d_low - np.einsum("mjk,mil->ijkl", gam, low)
    return term - term.transpose(1, 0, 2, 3)


def norm_sq_lowered(jet: DiagonalMetricJet, R: np.ndarray) -> float:
    """``|R|^2`` for coordinate components of a (0,4) tensor and a diagonal metric."""
    inv = 1.0 / jet.g
    w = np.einsum("i,j,k,l->ijkl", inv, inv, inv, inv)
    return float(np.sum(w * R * R))
