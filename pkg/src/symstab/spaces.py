"""Curvature models of irreducible symmetric spaces.

Lie-theoretic models carry the metric ``-B`` (negative Killing form of the
ambient algebra).  In that normalization

* a compact simple group has ``R(X,Y,Z,W) = -1/4 <[X,Y],[Z,W]>`` and ``Ric = g/4``;
* a quotient ``G/K`` has ``R(X,Y,Z,W) = -<[[X,Y],Z],W>`` on ``m`` and ``Ric = g/2``.

The signs are the ones that make sectional curvature ``|[X,Y]|^2/4`` and
``|[X,Y]|^2`` respectively, i.e. nonnegative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from . import tensor_core as tc
from .lie_algebra import (
    LieAlgebraBasis,
    SymmetricPair,
    build_lie_algebra,
    symmetric_pair,
    symplectic_form,
)

__all__ = [
    "SymmetricSpaceModel",
    "SpaceSpec",
    "UnknownSpaceError",
    "parse_space_id",
    "group_curvature",
    "quotient_curvature",
    "curvature_of_space",
    "rescale",
    "catalog_invariants",
    "simple_isotropy_ratio",
]

EINSTEIN_RTOL = 1e-10
CATALOGED_FAMILIES = ("EIV", "FII", "hyperbolic")


class UnknownSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class SpaceSpec:
    """A catalog identifier resolved to a family tag and integer parameters."""

    id: str
    family: str
    params: tuple[int, ...]


@dataclass(frozen=True)
class SymmetricSpaceModel:
    """Pointwise invariants of a symmetric space.

    ``source`` is one of ``"GroupManifold"``, ``"Quotient"``,
    ``"ConstantCurvature"``, ``"CatalogedInvariants"``; ``realization`` holds
    the matching Lie data (or ``None``).  ``scale`` is the factor applied to
    the reference metric, and ``kappa`` the sectional curvature for
    constant-curvature sources.  ``spectral`` is attached by the catalog loader.
    """

    id: str
    family: str
    params: tuple[int, ...]
    n: int
    source: str
    s: float
    norm_sq_r: float
    mu: float
    curvature: tc.CurvTensor | None = None
    realization: Any = field(default=None, repr=False, compare=False)
    scale: float = 1.0
    kappa: float | None = None
    spectral: Any = field(default=None, repr=False, compare=False)
    cataloged: dict = field(default_factory=dict, compare=False)

    @property
    def weyl_ratio(self) -> float:
        """The scale-invariant ratio ``s^2 / |R|^2``."""
        return self.s * self.s / self.norm_sq_r

    @property
    def is_constant_curvature(self) -> bool:
        if self.source == "ConstantCurvature":
            return True
        if self.curvature is None:
            return self.family == "hyperbolic"
        _, W, _ = tc.weyl_split(self.curvature)
        return tc.norm_sq(W) <= 1e-10 * self.norm_sq_r


_ID_PATTERNS = [
    (r"SU\((\d+)\)", "SU"),
    (r"Sp\((\d+)\)", "Sp"),
    (r"Spin\((\d+)\)", "Spin"),
    (r"SO\((\d+)\)", "SO"),
    (r"SU\((\d+)\)/Sp\((\d+)\)", "AII"),
    (r"Sp\((\d+)\)/Sp\((\d+)\)xSp\((\d+)\)", "CII"),
    (r"SO\((\d+)\)/SO\((\d+)\)", "SphereQuotient"),
    (r"E6/F4", "EIV"),
    (r"F4/Spin\(9\)", "FII"),
    (r"S(\d+)", "sphere"),
    (r"H(\d+)", "hyperbolic"),
]


def parse_space_id(space_id: str) -> SpaceSpec:
    """Resolve identifiers like ``"SU(3)"``, ``"Sp(3)/Sp(2)xSp(1)"``, ``"S5"``, ``"H3"``."""
    text = space_id.replace(" ", "").replace("×", "x")
    for pattern, family in _ID_PATTERNS:
        m = re.fullmatch(pattern, text)
        if not m:
            continue
        nums = tuple(int(g) for g in m.groups())
        if family == "AII":
            a, b = nums
            if a != 2 * b:
                raise UnknownSpaceError(f"{space_id}: expected SU(2m)/Sp(m)")
            return SpaceSpec(space_id, family, (b - 1,))
        if family == "CII":
            total, q, l = nums
            if total != q + l:
                raise UnknownSpaceError(f"{space_id}: expected Sp(q+l)/Sp(q)xSp(l)")
            return SpaceSpec(space_id, family, (q, l))
        if family == "SphereQuotient":
            a, b = nums
            if a != b + 1:
                raise UnknownSpaceError(f"{space_id}: expected SO(n+1)/SO(n)")
            return SpaceSpec(space_id, family, (b,))
        return SpaceSpec(space_id, family, nums)
    raise UnknownSpaceError(f"unknown space identifier {space_id!r}")


def group_curvature(alg: LieAlgebraBasis) -> tc.CurvTensor:
    """Curvature of the bi-invariant metric ``-B`` in the algebra's orthonormal basis."""
    c = alg.brackets
    return tc.CurvTensor(-0.25 * np.einsum("ijm,klm->ijkl", c, c))


def quotient_curvature(pair: SymmetricPair) -> tc.CurvTensor:
    """Curvature of ``G/K`` at the base point, metric ``-B`` restricted to ``m``."""
    c = pair.ambient.brackets
    K, M = list(pair.k_indices), list(pair.m_indices)
    c_mmk = c[np.ix_(M, M, K)]
    c_kmm = c[np.ix_(K, M, M)]
    # [[X_i, X_j], X_k] = sum_a c_ija [K_a, X_k], component on X_l is c_ija c_akl
    return tc.CurvTensor(-np.einsum("ija,akl->ijkl", c_mmk, c_kmm))


def _aii_pair(q: int) -> SymmetricPair:
    m = q + 1
    J = symplectic_form(m)
    alg = build_lie_algebra("su", 2 * m)
    return symmetric_pair(alg, lambda X: J @ X.conj() @ J.T, f"SU({2 * m})/Sp({m})")


def _cii_pair(q: int, l: int) -> SymmetricPair:
    total = q + l
    signs = np.concatenate([np.ones(q), -np.ones(l)])
    S = np.diag(np.concatenate([signs, signs]))
    alg = build_lie_algebra("sp", total)
    return symmetric_pair(alg, lambda X: S @ X @ S, f"Sp({total})/Sp({q})xSp({l})")


def _sphere_pair(n: int) -> SymmetricPair:
    S = np.diag(np.concatenate([[-1.0], np.ones(n)]))
    alg = build_lie_algebra("so", n + 1)
    return symmetric_pair(alg, lambda X: S @ X @ S, f"SO({n + 1})/SO({n})")


def _finish(spec: SpaceSpec, source: str, R: tc.CurvTensor, realization, kappa=None) -> SymmetricSpaceModel:
    _, s = tc.ricci_scalar(R)
    n = R.n
    dev = tc.einstein_deviation(R)
    if dev > EINSTEIN_RTOL * abs(s / n):
        raise RuntimeError(f"{spec.id}: built curvature is not Einstein (deviation {dev:.3e})")
    return SymmetricSpaceModel(
        id=spec.id, family=spec.family, params=spec.params, n=n, source=source,
        s=s, norm_sq_r=tc.norm_sq(R), mu=s / n, curvature=R,
        realization=realization, kappa=kappa,
    )


def curvature_of_space(space: str | SpaceSpec) -> SymmetricSpaceModel:
    """Build the curvature model of a matrix-realized catalog space.

    Spin(5) is realized through sp(2) and Spin(6) through su(4).  Exceptional
    and hyperbolic entries have no realization here; use :func:`catalog_invariants`.
    """
    spec = parse_space_id(space) if isinstance(space, str) else space
    fam, par = spec.family, spec.params
    if fam in CATALOGED_FAMILIES:
        raise UnknownSpaceError(f"{spec.id} has no matrix realization; use catalog_invariants")
    if fam == "sphere":
        (n,) = par
        return _finish(spec, "ConstantCurvature", tc.constant_curvature_tensor(n, 1.0), None, kappa=1.0)
    if fam in ("SU", "Sp", "Spin", "SO"):
        (q,) = par
        if fam == "SU":
            if q < 2:
                raise UnknownSpaceError(f"{spec.id}: need q >= 2")
            alg = build_lie_algebra("su", q)
        elif fam == "Sp":
            alg = build_lie_algebra("sp", q)
        elif fam == "Spin" and q == 5:
            alg = build_lie_algebra("sp", 2)
        elif fam == "Spin" and q == 6:
            alg = build_lie_algebra("su", 4)
        else:
            if q < 3 or q == 4:
                raise UnknownSpaceError(f"{spec.id}: so({q}) is not simple")
            alg = build_lie_algebra("so", q)
        return _finish(spec, "GroupManifold", group_curvature(alg), alg)
    if fam == "AII":
        pair = _aii_pair(*par)
    elif fam == "CII":
        q, l = par
        if q < 1 or l < 1:
            raise UnknownSpaceError(f"{spec.id}: need q, l >= 1")
        pair = _cii_pair(q, l)
    elif fam == "SphereQuotient":
        pair = _sphere_pair(*par)
    else:
        raise UnknownSpaceError(f"unsupported family {fam!r}")
    return _finish(spec, "Quotient", quotient_curvature(pair), pair)


def rescale(model: SymmetricSpaceModel, c: float) -> SymmetricSpaceModel:
    """The same space with metric ``c g``."""
    if not c > 0:
        raise ValueError(f"scale factor must be positive, got {c}")
    return replace(
        model,
        s=model.s / c,
        norm_sq_r=model.norm_sq_r / (c * c),
        mu=model.mu / c,
        curvature=None if model.curvature is None else model.curvature * (1.0 / c),
        scale=model.scale * c,
        kappa=None if model.kappa is None else model.kappa / c,
    )


def simple_isotropy_ratio(dim_k: int) -> float:
    """``s^2/|R|^2`` of a compact ``G/K`` with ``K`` simple, metric ``-B``.

    With ``X_i`` orthonormal in ``m`` and ``K_a`` in ``k``, put
    ``C_(ij),a = <[X_i, X_j], K_a>``.  Then ``C^T C = -B_m(K_a, K_b)``, which
    is ``(1 - gamma) I`` when ``k`` is simple, ``|R|^2 = tr((C^T C)^2)`` and
    ``s = tr(C^T C) = n/2``; eliminating ``gamma`` leaves ``dim k``.
    """
    return float(dim_k)


def catalog_invariants(entry) -> SymmetricSpaceModel:
    """Scalar-invariant model for spaces supplied by cataloged ratios.

    ``entry`` is a :class:`symstab.catalog.CatalogEntry` (or anything with
    ``id``, ``family``, ``params``, ``dim``, cataloged ratios and
    ``provenance``).  Exceptional quotients use the ``-B`` normalization
    (``mu = 1/2``); hyperbolic entries use curvature ``-1``.
    """
    fam = entry.family
    if fam not in CATALOGED_FAMILIES:
        raise UnknownSpaceError(f"{entry.id}: family {fam} is matrix-realized")
    if not entry.provenance:
        raise ValueError(f"{entry.id}: cataloged entry without provenance note")
    n = int(entry.dim)
    if fam == "hyperbolic":
        s = -float(n * (n - 1))
        norm = 2.0 * n * (n - 1)
        cataloged = {}
        if entry.s_sq_over_norm_sq_r is not None:
            cataloged["s_sq_over_norm_sq_r"] = entry.s_sq_over_norm_sq_r
        model = SymmetricSpaceModel(
            id=entry.id, family=fam, params=tuple(entry.params), n=n,
            source="CatalogedInvariants", s=s, norm_sq_r=norm, mu=s / n, kappa=-1.0,
            cataloged=cataloged,
        )
        if "s_sq_over_norm_sq_r" in cataloged and not np.isclose(model.weyl_ratio, cataloged["s_sq_over_norm_sq_r"], rtol=1e-12):
            raise ValueError(f"{entry.id}: cataloged s^2/|R|^2 disagrees with curvature -1")
        return model
    if entry.s_sq_over_norm_sq_r is None or entry.lambda1_over_s is None:
        raise ValueError(f"{entry.id}: missing cataloged ratios")
    s = n / 2.0
    norm = s * s / float(entry.s_sq_over_norm_sq_r)
    return SymmetricSpaceModel(
        id=entry.id, family=fam, params=tuple(entry.params), n=n,
        source="CatalogedInvariants", s=s, norm_sq_r=norm, mu=s / n,
        cataloged={"lambda1_over_s": float(entry.lambda1_over_s),
                   "s_sq_over_norm_sq_r": float(entry.s_sq_over_norm_sq_r)},
    )
