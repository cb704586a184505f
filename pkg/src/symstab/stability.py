"""Conformal second variation of ``R_p(g) = int |R|^p dv`` at symmetric metrics.

For ``h = f g`` with ``f`` a Laplace eigenfunction of eigenvalue ``lam``
(``Delta f = -tr Ddf``), ``||Delta f||^2 = lam^2 ||f||^2`` and
``||df||^2 = lam ||f||^2``, so the Hessian reduces to
``p |R|^(p-2) Q(lam) ||f||^2`` with ``Q(lam) = a lam^2 - b lam + c``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import spectrum as spec_mod

__all__ = [
    "Verdict",
    "HessianCoefficients",
    "StabilityReport",
    "coefficients",
    "q_form",
    "hessian_value",
    "classify",
    "saddle_witness",
    "resolve_p",
    "PRINTED_WEYL_BOUND",
    "computed_weyl_bound",
]

SIGN_RTOL = 1e-10
SAMPLE_SIZE = 10


class Verdict(str, enum.Enum):
    UNSTABLE = "UnstableConformal"
    STABLE = "StableConformal"
    DEGENERATE = "StableConformalDegenerate"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class HessianCoefficients:
    n: int
    p: float
    s: float
    norm_sq_r: float
    a: float
    b: float
    c: float
    p_flagged: bool = False  # p < 2; meaningful only when p = n/2

    def q(self, lam: float) -> float:
        return q_form(self, lam)

    def tolerance(self, lam: float) -> float:
        """Sign tolerance scaled to the size of the terms of ``Q(lam)``."""
        return SIGN_RTOL * (abs(self.a) * lam * lam + abs(self.b) * lam + abs(self.c))

    def roots(self) -> tuple[float, ...]:
        disc = self.b * self.b - 4 * self.a * self.c
        if disc < 0:
            return ()
        r = math.sqrt(disc)
        return tuple(sorted(((self.b - r) / (2 * self.a), (self.b + r) / (2 * self.a))))


def coefficients(n: int, p: float, s: float, norm_sq_r: float) -> HessianCoefficients:
    """Coefficients ``(a, b, c)`` of the conformal Hessian."""
    if n < 3:
        raise ValueError("dimension must be >= 3")
    if not norm_sq_r > 0:
        raise ValueError("|R|^2 must be positive")
    half = n / 2
    flagged = p < 2
    a = n - 1 + (p - 2) * 4 * s * s / (n * n * norm_sq_r)
    b = 4 * (p - 1) * s / n
    c = 0.0 if p == half else (p - half) * norm_sq_r
    return HessianCoefficients(n, p, s, norm_sq_r, a, b, c, flagged)


def q_form(coeffs: HessianCoefficients, lam: float) -> float:
    if lam < 0:
        raise ValueError("eigenvalue must be nonnegative")
    return coeffs.a * lam * lam - coeffs.b * lam + coeffs.c


def hessian_value(coeffs: HessianCoefficients, lam: float, f_norm_sq: float = 1.0) -> float:
    """``H(fg, fg)`` for an eigenfunction with eigenvalue ``lam`` and ``||f||^2 = f_norm_sq``."""
    return coeffs.p * coeffs.norm_sq_r ** ((coeffs.p - 2) / 2) * q_form(coeffs, lam) * f_norm_sq


PRINTED_WEYL_BOUND = "2/(n(n-1))"


def computed_weyl_bound(n: int) -> float:
    """``|s I/(n(n-1))|^2`` divided into ``s^2``: the bound ``s^2/|R|^2 <= n(n-1)/2``."""
    return n * (n - 1) / 2


def resolve_p(p, n: int) -> float:
    """Accept a number, ``"half-dim"`` or ``"half-dim+K"``."""
    if isinstance(p, (int, float)):
        return float(p)
    text = str(p).strip()
    if text.startswith("half-dim"):
        rest = text[len("half-dim"):]
        return n / 2 + (float(rest) if rest else 0.0)
    return float(text)


@dataclass
class StabilityReport:
    space_id: str
    p: float
    n: int
    s: float
    norm_sq_r: float
    lambda1: float | None
    lambda1_over_s: float | None
    coeffs: HessianCoefficients
    q_lambda1: float | None
    verdict: Verdict
    gap_condition: bool | None  # lambda1/s >= 2/n, reported for s > 0; the verdict never relies on it
    saddle_witness: tuple[float | None, float | None] | None
    spectrum: list[float]
    weyl_ratio: float
    provenance: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        neg, pos = self.saddle_witness if self.saddle_witness else (None, None)
        n = self.n
        return {
            "id": self.space_id,
            "n": n,
            "p": self.p,
            "s": self.s,
            "norm_sq_R": self.norm_sq_r,
            "lambda1": self.lambda1,
            "lambda1_over_s": self.lambda1_over_s,
            "s_sq_over_R_sq": self.weyl_ratio,
            "a": self.coeffs.a,
            "b": self.coeffs.b,
            "c": self.coeffs.c,
            "Q_lambda1": self.q_lambda1,
            "verdict": self.verdict.value,
            "gap_condition": self.gap_condition,
            "saddle_witness": {"negative": neg, "positive": pos},
            "spectrum_sample": list(self.spectrum),
            "weyl_check": {
                "computed_bound": computed_weyl_bound(n),
                "printed_bound": 2 / (n * (n - 1)),
                "below_computed_bound": self.weyl_ratio < computed_weyl_bound(n) * (1 - 1e-12),
                "below_printed_bound": self.weyl_ratio < 2 / (n * (n - 1)),
            },
            "provenance": self.provenance,
            "notes": list(self.notes),
        }


def saddle_witness(coeffs: HessianCoefficients, eigenvalues: Sequence[float]) -> tuple[float | None, float | None]:
    """``(lam_minus, lam_plus)``: an eigenvalue with ``Q < 0`` and the smallest with ``Q > 0``."""
    if not len(eigenvalues):
        raise ValueError("empty spectrum")
    if coeffs.a <= 0:
        raise ValueError("saddle search needs a > 0")
    neg = pos = None
    for lam in eigenvalues:
        qv, tol = q_form(coeffs, lam), coeffs.tolerance(lam)
        if neg is None and qv < -tol:
            neg = lam
        if pos is None and qv > tol:
            pos = lam
    return neg, pos


# Eigenvalues of compact hyperbolic manifolds are not determined by the local
# geometry; sign checks there run over a probe grid spanning many decades.
HYPERBOLIC_PROBE = tuple(float(x) for x in np.logspace(-8, 8, 33))


def _spectrum_for(model, p_coeffs: HessianCoefficients, count: int) -> list[float]:
    base = spec_mod.spectrum_sample(model, count)
    roots = p_coeffs.roots()
    if roots and base[-1] <= roots[-1]:
        # extend until the sample passes the larger root of Q
        k = count
        while base[-1] <= roots[-1]:
            k *= 2
            base = spec_mod.spectrum_sample(model, k)
    return base


def classify(model, p, sample_size: int = SAMPLE_SIZE) -> StabilityReport:
    """Conformal stability verdict of ``model`` for ``R_p``.

    ``p`` may be a number or ``"half-dim"`` / ``"half-dim+K"``.
    """
    n = model.n
    p = resolve_p(p, n)
    notes: list[str] = []
    prov = {"source": model.source, "scale": model.scale}
    if model.cataloged:
        prov["cataloged"] = dict(model.cataloged)

    inconclusive_p = p < 2 and p != n / 2
    coeffs = coefficients(n, p, model.s, model.norm_sq_r)
    if coeffs.p_flagged and not inconclusive_p:
        notes.append(f"p = n/2 = {p} is below 2")

    if model.s < 0:
        probe = [x * abs(model.mu) for x in HYPERBOLIC_PROBE]
        try:
            lam = spec_mod.lambda1(model)
            lam1, over_s = lam.value, lam.over_s
            prov["lambda1"] = lam.source
        except spec_mod.MissingSpectralData:
            lam1 = over_s = None
            prov["lambda1"] = "not determined by local geometry"
        q1 = None if lam1 is None else q_form(coeffs, lam1)
        if inconclusive_p:
            verdict = Verdict.INCONCLUSIVE
            notes.append(f"p = {p} < 2 with p != n/2")
        elif p >= n / 2:
            # a > 0, -b > 0, c >= 0: Q(lam) > 0 for every lam > 0
            assert coeffs.a > 0 and coeffs.b < 0 and coeffs.c >= 0
            verdict = Verdict.STABLE
        else:
            verdict = Verdict.INCONCLUSIVE
            notes.append("p < n/2 with s < 0: sign of c is negative, spectrum needed")
        return StabilityReport(
            model.id, p, n, model.s, model.norm_sq_r, lam1, over_s, coeffs, q1, verdict,
            None, saddle_witness(coeffs, probe), probe, model.weyl_ratio, prov, notes,
        )

    lam = spec_mod.lambda1(model)
    prov["lambda1"] = lam.source
    eig = _spectrum_for(model, coeffs, sample_size)
    q1 = q_form(coeffs, lam.value)
    witness = saddle_witness(coeffs, eig)
    if inconclusive_p:
        verdict = Verdict.INCONCLUSIVE
        notes.append(f"p = {p} < 2 with p != n/2")
    else:
        tol1 = coeffs.tolerance(lam.value)
        negative = [x for x in eig if q_form(coeffs, x) < -coeffs.tolerance(x)]
        if q1 < -tol1 or negative:
            verdict = Verdict.UNSTABLE
            if q1 >= -tol1:
                notes.append(f"Q(lambda1) >= 0 but Q < 0 at eigenvalue {negative[0]}")
        elif abs(q1) <= tol1:
            verdict = Verdict.DEGENERATE
        else:
            verdict = Verdict.STABLE
    gap = lam.over_s >= 2 / n if model.s > 0 else None
    return StabilityReport(
        model.id, p, n, model.s, model.norm_sq_r, lam.value, lam.over_s, coeffs, q1, verdict,
        gap, witness, eig, model.weyl_ratio, prov, notes,
    )
