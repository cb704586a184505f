"""Verification suites: structural invariants of built models and sphere oracles."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import tensor_core as tc
from .catalog import Catalog, build_model, load_catalog
from .lie_algebra import LieAlgebraBasis, SymmetricPair, ad_invariance_residual, jacobi_residual
from .oracle.conformal import (
    ConformalPath,
    conformal_curvature,
    fd_first_derivative,
    fd_second_derivative,
    functional_value,
)
from .oracle.identities import first_variation_identity_checks
from .oracle.zonal import ZonalFunction, default_resolution, sphere_volume
from .roots import casimir
from .spaces import curvature_of_space
from .stability import coefficients, computed_weyl_bound, hessian_value

__all__ = ["Check", "SUITES", "run_suite", "invariant_checks", "sphere_oracle_checks", "curvature_operator_spectrum"]

SUITES = ("invariants", "sphere-oracle", "all")


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    observed: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: expected {self.expected:.15g}, observed {self.observed:.15g}, "
                f"tolerance {self.tolerance:.3g}")


def _at_most(name: str, observed: float, tol: float) -> Check:
    return Check(name, 0.0, float(observed), tol, bool(observed <= tol))


def _close(name: str, expected: float, observed: float, tol: float, relative: bool = True) -> Check:
    scale = abs(expected) if relative and expected != 0 else 1.0
    return Check(name, float(expected), float(observed), tol, bool(abs(observed - expected) <= tol * scale))


def symmetry_residuals(R: tc.CurvTensor) -> dict[str, float]:
    T = R.entries
    return {
        "antisymmetry": float(max(np.max(np.abs(T + T.transpose(1, 0, 2, 3))),
                                  np.max(np.abs(T + T.transpose(0, 1, 3, 2))))),
        "pair symmetry": float(np.max(np.abs(T - T.transpose(2, 3, 0, 1)))),
        "first Bianchi": float(np.max(np.abs(T + T.transpose(0, 2, 3, 1) + T.transpose(0, 3, 1, 2)))),
    }


def curvature_operator_spectrum(R: tc.CurvTensor) -> np.ndarray:
    """Sorted eigenvalues of ``R`` acting on 2-forms ``e_i ^ e_j`` (i < j), an isometry invariant."""
    n = R.n
    idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    T = R.entries
    M = np.array([[T[i, j, l, k] for (k, l) in idx] for (i, j) in idx])
    return np.sort(np.linalg.eigvalsh(0.5 * (M + M.T)))


def _model_checks(model) -> list[Check]:
    R = model.curvature
    out = []
    for key, val in symmetry_residuals(R).items():
        out.append(_at_most(f"{model.id} {key}", val, 1e-12))
    out.append(_at_most(f"{model.id} Einstein deviation / |s/n|", tc.einstein_deviation(R) / abs(model.s / model.n), 1e-10))
    trace = float(np.trace(tc.r_ring(R).entries))
    out.append(_close(f"{model.id} trace of R-ring vs |R|^2", model.norm_sq_r, trace, 1e-12))
    real = model.realization
    if isinstance(real, LieAlgebraBasis):
        out.append(_at_most(f"{model.id} Jacobi residual", jacobi_residual(real), 1e-12))
        out.append(_at_most(f"{model.id} ad-invariance residual", ad_invariance_residual(real), 1e-12))
    elif isinstance(real, SymmetricPair):
        for key, val in real.bracket_residuals().items():
            out.append(_at_most(f"{model.id} Cartan pair {key}", val, 1e-12))
    if not model.is_constant_curvature:
        bound = computed_weyl_bound(model.n)
        out.append(Check(f"{model.id} s^2/|R|^2 strictly below n(n-1)/2", bound, model.weyl_ratio, 0.0,
                         bool(model.weyl_ratio < bound)))
    return out


def _spectra_agree(name: str, A, B, tol: float = 1e-10) -> Check:
    """Curvature-operator spectra normalized by ``s``, so the check is scale-free."""
    sa = curvature_operator_spectrum(A.curvature) / A.s
    sb = curvature_operator_spectrum(B.curvature) / B.s
    if sa.shape != sb.shape:
        return Check(name, float(len(sa)), float(len(sb)), 0.0, False)
    dev = float(np.max(np.abs(sa - sb)) / np.max(np.abs(sa)))
    return _at_most(name, dev, tol)


def _double_realizations() -> list[Check]:
    out = []
    for spin, other in (("Spin(6)", "SO(6)"), ("Spin(5)", "SO(5)")):
        A, B = curvature_of_space(spin), curvature_of_space(other)
        out.append(_close(f"{spin} vs {other} dimension", A.n, B.n, 0.0))
        out.append(_close(f"{spin} vs {other} s^2/|R|^2", A.weyl_ratio, B.weyl_ratio, 1e-10))
        out.append(_close(f"{spin} vs {other} scalar curvature", A.s, B.s, 1e-10))
        out.append(_spectra_agree(f"{spin} vs {other} curvature-operator spectrum / s", A, B))
    sphere5 = curvature_of_space("SU(4)/Sp(2)")
    _, W, _ = tc.weyl_split(sphere5.curvature)
    out.append(_at_most("SU(4)/Sp(2) |W|^2 / |R|^2", tc.norm_sq(W) / sphere5.norm_sq_r, 1e-10))
    out.append(_spectra_agree("SU(4)/Sp(2) vs SO(6)/SO(5) curvature-operator spectrum / s",
                              sphere5, curvature_of_space("SO(6)/SO(5)")))
    for m in (2, 3):
        model = curvature_of_space(f"SU({2 * m})/Sp({m})")
        dim_k = m * (2 * m + 1)
        out.append(_close(f"{model.id} s^2/|R|^2 vs dim k", dim_k, model.weyl_ratio, 1e-10))
    return out


def _exceptional_checks(catalog: Catalog) -> list[Check]:
    weights = {"E6/F4": ("E6", [(1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1)]), "F4/Spin(9)": ("F4", [(0, 0, 0, 1)])}
    out = []
    for entry in catalog:
        if entry.family not in ("EIV", "FII"):
            continue
        label, ws = weights[entry.id]
        s = entry.dim / 2
        for w in ws:
            out.append(_close(f"{entry.id} Casimir {list(w)} / s vs cataloged lambda1/s",
                              entry.lambda1_over_s, casimir(w, label) / s, 1e-12))
    return out


def invariant_checks(catalog: Catalog | None = None) -> list[Check]:
    catalog = load_catalog() if catalog is None else catalog
    out = []
    for entry in catalog:
        model = build_model(entry)
        if model.curvature is not None:
            out.extend(_model_checks(model))
    for extra in ("SO(5)", "SO(6)", "SO(6)/SO(5)"):
        out.extend(_model_checks(curvature_of_space(extra)))
    out.extend(_double_realizations())
    out.extend(_exceptional_checks(catalog))
    return out


def sphere_oracle_checks(n: int = 3, ks=(1, 2, 3)) -> list[Check]:
    p = n / 2
    s, nsq = n * (n - 1.0), 2.0 * n * (n - 1)
    coeffs = coefficients(n, p, s, nsq)
    out = []
    base = ZonalFunction(n, 1)
    F0 = functional_value(ConformalPath(base), 0.0, p)
    out.append(_close(f"S{n} F(0) vs vol * |R|^p", sphere_volume(n) * nsq ** (p / 2), F0, 1e-8))
    out.append(_close(f"S{n} F(0) at doubled resolution", F0,
                      functional_value(ConformalPath(base), 0.0, p, nodes=2 * default_resolution()), 1e-8))
    th = np.linspace(1e-2, math.pi - 1e-2, 41)
    for k in ks:
        f = ZonalFunction(n, k)
        path = ConformalPath(f)
        out.append(_at_most(f"S{n} k={k} eigenfunction residual", f.eigen_residual(th), 1e-10 * max(1.0, f.eigenvalue)))
        out.append(_at_most(f"S{n} k={k} mean of f", abs(f.mean()), 1e-10))
        norm = f.norm_sq()
        target = hessian_value(coeffs, f.eigenvalue, norm)
        scale = abs(target) if target != 0 else p * nsq ** ((p - 2) / 2) * coeffs.a * f.eigenvalue ** 2 * norm
        for par in ("linear", "exponential"):
            est, err = fd_second_derivative(ConformalPath(f, par), p)
            tol = max(1e-3 * scale, err)
            out.append(Check(f"S{n} k={k} {par} second derivative vs Hessian", target, est, tol,
                             bool(abs(est - target) <= tol)))
            out.append(_at_most(f"S{n} k={k} {par} |F'(0)| / F(0)", abs(fd_first_derivative(ConformalPath(f, par), p)) / F0, 1e-6))
        t = 0.05
        flipped = ConformalPath(ZonalFunction(n, k, -1.0))
        out.append(_close(f"S{n} k={k} parity F_-f(t) vs F_f(-t)", functional_value(path, -t, p),
                          functional_value(flipped, t, p), 1e-14))
    for k in (1, 2):
        rep = first_variation_identity_checks(ZonalFunction(n, k))
        for name, dev in rep.deviations.items():
            out.append(_at_most(f"S{n} k={k} {name} first-variation identity", dev, 1e-5))
    # conformal change formula: homothety and a generic radial factor
    c = 2.5
    Rc = conformal_curvature(n, 0.5 * math.log(c), 0.0, 0.0, 1.0)
    dev = float(np.max(np.abs(Rc.entries - tc.constant_curvature_tensor(n, 1 / c).entries)))
    out.append(_at_most(f"S{n} conformal curvature of constant factor {c}", dev, 1e-14))
    f = ZonalFunction(n, 1, 0.1)
    prof = ConformalPath(f).profile(1.0, np.array([1.0]))
    Rg = conformal_curvature(n, prof.u[0], prof.du[0], prof.ddu[0], 1.0)
    worst = max(symmetry_residuals(Rg).values())
    out.append(_at_most(f"S{n} conformal curvature symmetries", worst, 1e-9))
    return out


def run_suite(suite: str, catalog: Catalog | None = None) -> list[Check]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    out = []
    if suite in ("invariants", "all"):
        out.extend(invariant_checks(catalog))
    if suite in ("sphere-oracle", "all"):
        out.extend(sphere_oracle_checks())
    return out
