"""Pointwise checks of the first-variation formulas for ``h = f g`` on round spheres.

Each check differentiates a coordinate quantity of ``g_t = (1 + t f) g0`` in
``t`` by Richardson-extrapolated central differences and compares it with the
closed form:

* connection: ``g(dGamma(x, y), z) = 1/2 [df(x) g(y,z) + df(y) g(x,z) - df(z) g(x,y)]``
* curvature: ``dR(x,y,z,u) = f R(x,y,z,u)
  - 1/2 [Ddf(y,z) g(x,u) + Ddf(x,u) g(y,z) - Ddf(x,z) g(y,u) - Ddf(y,u) g(x,z)]``
* density: ``d|R|^p = 2 (s/n) p |R|^(p-2) Delta f - p f |R|^p``

Deviations are the largest componentwise mismatch over all samples divided by
the largest closed-form magnitude, so a sample where the derivative happens to
vanish does not blow up the ratio.  The density uses the summed size of its two
terms instead, since they cancel for first eigenfunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .conformal import ConformalPath
from .coords import christoffel, norm_sq_lowered, riemann_lowered, round_jet
from .zonal import ZonalFunction

__all__ = [
    "ConnectionVariation",
    "IdentityReport",
    "connection_variation",
    "equatorial_band",
    "first_variation_identity_checks",
]

FD_STEP = 1e-3
BAND_HALF_WIDTH = 0.6
SAMPLE_MARGIN = 1e-2
# the remaining hyperspherical angles; any values away from 0 and pi work
_TRANSVERSE = (1.0, 2.2, 0.8, 1.9, 1.3, 0.6, 2.4)


def equatorial_band(count: int = 8) -> np.ndarray:
    """``count`` colatitudes spread over ``[pi/2 - 0.6, pi/2 + 0.6]``, excluding the equator itself."""
    if count < 1:
        raise ValueError("need at least one sample")
    # offset grid so the equator, where f = cos(theta) and its Laplacian vanish, is not a node
    return math.pi / 2 + BAND_HALF_WIDTH * (np.arange(count) + 0.5 - count / 2) / (count / 2)


def _point(n: int, theta: float) -> np.ndarray:
    if not (SAMPLE_MARGIN <= theta <= math.pi - SAMPLE_MARGIN):
        raise ValueError(f"sample theta = {theta} is too close to a pole")
    if n - 1 > len(_TRANSVERSE):
        raise ValueError(f"identity checks are set up for n <= {len(_TRANSVERSE) + 1}")
    return np.array((theta,) + _TRANSVERSE[: n - 1])


def _jet(path: ConformalPath, t: float, phi: np.ndarray):
    lw, dlw, ddlw, _ = path.log_factor(t, phi[0])
    return round_jet(phi, (float(lw), float(dlw), float(ddlw)))


def _t_derivative(fn, step: float = FD_STEP):
    def central(h):
        return (fn(h) - fn(-h)) / (2.0 * h)

    return (4.0 * central(step / 2) - central(step)) / 3.0


def _df(f: ZonalFunction, phi: np.ndarray) -> np.ndarray:
    out = np.zeros(len(phi))
    out[0] = f.d1(phi[0])
    return out


def _hessian(f: ZonalFunction, phi: np.ndarray) -> np.ndarray:
    """Coordinate components of ``Ddf`` under the round metric."""
    gam = christoffel(round_jet(phi))
    n = len(phi)
    H = np.zeros((n, n))
    H[0, 0] = f.d2(phi[0])
    return H - gam[0] * f.d1(phi[0])


@dataclass(frozen=True)
class ConnectionVariation:
    """``g0(Pi(d_i, d_j), d_k)`` at one point, finite-difference and closed form."""

    theta: float
    observed: np.ndarray
    expected: np.ndarray


def connection_variation(f: ZonalFunction, theta: float, step: float = FD_STEP) -> ConnectionVariation:
    path = ConformalPath(f, "linear")
    phi = _point(f.n, theta)
    g0 = np.diag(round_jet(phi).g)
    dgam = _t_derivative(lambda t: christoffel(_jet(path, t, phi)), step)
    observed = np.einsum("kl,lij->ijk", g0, dgam)
    df = _df(f, phi)
    expected = 0.5 * (
        np.einsum("i,jk->ijk", df, g0) + np.einsum("j,ik->ijk", df, g0) - np.einsum("k,ij->ijk", df, g0)
    )
    return ConnectionVariation(float(theta), observed, expected)


def _curvature_pair(f: ZonalFunction, p: float, theta: float, step: float):
    path = ConformalPath(f, "linear")
    phi = _point(f.n, theta)
    jet0 = round_jet(phi)
    g0 = np.diag(jet0.g)
    R0 = riemann_lowered(jet0)

    observed = _t_derivative(lambda t: riemann_lowered(_jet(path, t, phi)), step)
    H = _hessian(f, phi)
    ein = np.einsum
    kn = (
        ein("yz,xu->xyzu", H, g0) + ein("xu,yz->xyzu", H, g0)
        - ein("xz,yu->xyzu", H, g0) - ein("yu,xz->xyzu", H, g0)
    )
    expected = f.value(phi[0]) * R0 - 0.5 * kn

    def density(t):
        jet = _jet(path, t, phi)
        return norm_sq_lowered(jet, riemann_lowered(jet)) ** (p / 2)

    n = f.n
    nsq = norm_sq_lowered(jet0, R0)
    s = n * (n - 1.0)
    d_obs = _t_derivative(density, step)
    lap = float(f.laplacian(phi[0]))
    lap_term = 2.0 * (s / n) * p * nsq ** ((p - 2) / 2) * lap
    f_term = p * float(f.value(phi[0])) * nsq ** (p / 2)
    return observed, expected, d_obs, lap_term - f_term, abs(lap_term) + abs(f_term)


@dataclass
class IdentityReport:
    n: int
    k: int
    p: float
    thetas: list[float]
    deviations: dict[str, float]
    tolerance: float
    details: dict[str, list[float]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v <= self.tolerance for v in self.deviations.values())


def _relative(observed: list[np.ndarray], expected: list[np.ndarray],
              scale: float | None = None) -> tuple[float, list[float]]:
    if scale is None:
        scale = max(float(np.max(np.abs(e))) for e in expected)
    errs = [float(np.max(np.abs(o - e))) for o, e in zip(observed, expected)]
    if scale == 0.0:
        return max(errs), errs
    return max(errs) / scale, [x / scale for x in errs]


def first_variation_identity_checks(f: ZonalFunction, thetas=None, p: float | None = None,
                                    step: float = FD_STEP, tolerance: float = 1e-5) -> IdentityReport:
    """Maximum relative deviation per identity over the sample colatitudes.

    ``p`` defaults to ``n/2``; ``thetas`` defaults to :func:`equatorial_band`.
    """
    thetas = equatorial_band() if thetas is None else np.asarray(thetas, dtype=float)
    p = f.n / 2 if p is None else p
    conn_o, conn_e, curv_o, curv_e, dens_o, dens_e = [], [], [], [], [], []
    dens_scale = 0.0
    for th in thetas:
        cv = connection_variation(f, th, step)
        conn_o.append(cv.observed)
        conn_e.append(cv.expected)
        co, ce, do, de, size = _curvature_pair(f, p, th, step)
        dens_scale = max(dens_scale, size)
        curv_o.append(co)
        curv_e.append(ce)
        dens_o.append(np.array([do]))
        dens_e.append(np.array([de]))
    deviations, details = {}, {}
    for name, o, e, scale in (
        ("connection", conn_o, conn_e, None),
        ("curvature", curv_o, curv_e, None),
        # the two density terms cancel identically for first eigenfunctions
        ("density", dens_o, dens_e, dens_scale),
    ):
        deviations[name], details[name] = _relative(o, e, scale)
    return IdentityReport(f.n, f.k, p, [float(t) for t in thetas], deviations, tolerance, details)
