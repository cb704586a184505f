"""Matrix realizations of compact classical Lie algebras.

Every algebra is delivered in a basis that is orthonormal for ``-B``, the
negative of the Killing form.  Quaternionic matrices are written as complex
``2q x 2q`` blocks ``[[A, B], [-conj(B), conj(A)]]`` so that all arithmetic
stays complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "LieAlgebraBasis",
    "SymmetricPair",
    "build_lie_algebra",
    "symmetric_pair",
    "symplectic_form",
    "killing_form",
    "jacobi_residual",
    "ad_invariance_residual",
]

FAMILIES = ("su", "sp", "so")


def _real_vec(mats: np.ndarray) -> np.ndarray:
    """Flatten complex matrices into real vectors (real block then imaginary block)."""
    mats = np.asarray(mats)
    flat = mats.reshape(mats.shape[0], -1)
    return np.concatenate([flat.real, flat.imag], axis=1)


@dataclass(frozen=True)
class LieAlgebraBasis:
    """A compact Lie algebra with a ``-B``-orthonormal matrix basis.

    ``brackets[i, j, k]`` are the structure constants, ``[e_i, e_j] = sum_k c_ijk e_k``.
    ``gram`` is the table of ``-B(e_i, e_j)`` (the identity up to round-off).
    """

    family: str
    rank: int
    matrices: np.ndarray
    brackets: np.ndarray
    gram: np.ndarray
    closure_residual: float = field(default=0.0, compare=False)

    @property
    def dim(self) -> int:
        return self.matrices.shape[0]

    def label(self) -> str:
        return f"{self.family}({self.rank})"

    def ad(self) -> np.ndarray:
        """``ad[i]`` is the matrix of ``ad(e_i)`` acting on coordinate columns."""
        # (ad e_i)_{kj} = c_{ijk}
        return self.brackets.transpose(0, 2, 1)


def _spanning_set(family: str, q: int) -> list[np.ndarray]:
    mats: list[np.ndarray] = []

    def unit(n, a, b):
        m = np.zeros((n, n), dtype=complex)
        m[a, b] = 1.0
        return m

    if family == "su":
        for a in range(q):
            for b in range(a + 1, q):
                mats.append(unit(q, a, b) - unit(q, b, a))
                mats.append(1j * (unit(q, a, b) + unit(q, b, a)))
        for a in range(q - 1):
            mats.append(1j * (unit(q, a, a) - unit(q, a + 1, a + 1)))
    elif family == "so":
        for a in range(q):
            for b in range(a + 1, q):
                mats.append(unit(q, a, b) - unit(q, b, a))
    elif family == "sp":
        # X = [[A, B], [-conj(B), conj(A)]], A in u(q), B complex symmetric.
        z = np.zeros((q, q), dtype=complex)
        blocks_a = []
        for a in range(q):
            for b in range(a + 1, q):
                blocks_a.append(unit(q, a, b) - unit(q, b, a))
                blocks_a.append(1j * (unit(q, a, b) + unit(q, b, a)))
            blocks_a.append(1j * unit(q, a, a))
        for A in blocks_a:
            mats.append(np.block([[A, z], [z, A.conj()]]))
        for a in range(q):
            for b in range(a, q):
                S = unit(q, a, b) + unit(q, b, a) if a != b else unit(q, a, a)
                for B in (S, 1j * S):
                    mats.append(np.block([[z, B], [-B.conj(), z]]))
    else:
        raise ValueError(f"unsupported family {family!r}; expected one of {FAMILIES}")
    return mats


def _coordinates(basis_vecs: np.ndarray, target_vecs: np.ndarray) -> tuple[np.ndarray, float]:
    """Least-squares coordinates of ``target_vecs`` in ``basis_vecs`` and the worst residual."""
    coords, *_ = np.linalg.lstsq(basis_vecs.T, target_vecs.T, rcond=None)
    resid = target_vecs - coords.T @ basis_vecs
    scale = max(1.0, float(np.max(np.abs(target_vecs)))) if target_vecs.size else 1.0
    return coords.T, float(np.max(np.abs(resid))) / scale if resid.size else 0.0


def _structure_constants(mats: np.ndarray) -> tuple[np.ndarray, float]:
    d = mats.shape[0]
    prods = np.einsum("iab,jbc->ijac", mats, mats)
    comms = prods - prods.transpose(1, 0, 2, 3)
    coords, resid = _coordinates(_real_vec(mats), _real_vec(comms.reshape(d * d, *mats.shape[1:])))
    return coords.reshape(d, d, d), resid


def killing_form(brackets: np.ndarray) -> np.ndarray:
    """``B(e_i, e_j) = tr(ad e_i ad e_j)`` from a structure-constant table."""
    # tr(ad_i ad_j) = sum_{k,l} c_{ikl} c_{jlk}
    return np.einsum("ikl,jlk->ij", brackets, brackets)


def _from_matrices(family: str, rank: int, mats: Sequence[np.ndarray]) -> LieAlgebraBasis:
    mats = np.asarray(mats, dtype=complex)
    # Frobenius-orthonormal basis of the real span.
    vecs = _real_vec(mats)
    u, sv, vt = np.linalg.svd(vecs, full_matrices=False)
    keep = sv > 1e-10 * sv[0]
    frob = vt[keep]
    shape = mats.shape[1:]
    half = frob.shape[1] // 2
    base = (frob[:, :half] + 1j * frob[:, half:]).reshape(-1, *shape)

    c, resid = _structure_constants(base)
    neg_b = -killing_form(c)
    w, v = np.linalg.eigh(0.5 * (neg_b + neg_b.T))
    if w[0] <= 0:
        raise ValueError(f"{family}({rank}): -Killing form is not positive definite")
    T = v / np.sqrt(w)
    onb = np.einsum("ia,ibc->abc", T, base)
    c2, resid2 = _structure_constants(onb)
    gram = -killing_form(c2)
    return LieAlgebraBasis(family, rank, onb, c2, gram, max(resid, resid2))


def build_lie_algebra(family: str, q: int) -> LieAlgebraBasis:
    """Build ``su(q)`` (q >= 2), ``sp(q)`` (q >= 1) or ``so(q)`` (q >= 3)."""
    minimum = {"su": 2, "sp": 1, "so": 3}
    if family not in minimum:
        raise ValueError(f"unsupported family {family!r}; expected one of {FAMILIES}")
    if int(q) != q or q < minimum[family]:
        raise ValueError(f"{family}({q}) outside the supported range (q >= {minimum[family]})")
    q = int(q)
    alg = _from_matrices(family, q, _spanning_set(family, q))
    expected = {"su": q * q - 1, "sp": q * (2 * q + 1), "so": q * (q - 1) // 2}[family]
    if alg.dim != expected:
        raise RuntimeError(f"{family}({q}) built with dimension {alg.dim}, expected {expected}")
    return alg


def jacobi_residual(alg: LieAlgebraBasis) -> float:
    c = alg.brackets
    # [[e_i, e_j], e_k] has coordinates sum_m c_ijm c_mkl
    t = np.einsum("ijm,mkl->ijkl", c, c)
    cyc = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(cyc)))


def ad_invariance_residual(alg: LieAlgebraBasis) -> float:
    """``max |<[X,Y],Z> + <Y,[X,Z]>|`` over basis triples."""
    c, G = alg.brackets, alg.gram
    t = np.einsum("ijm,mk->ijk", c, G) + np.einsum("ikm,jm->ijk", c, G)
    return float(np.max(np.abs(t)))


def symplectic_form(m: int) -> np.ndarray:
    z, e = np.zeros((m, m)), np.eye(m)
    return np.block([[z, e], [-e, z]])


@dataclass(frozen=True)
class SymmetricPair:
    """Cartan decomposition ``g = k + m`` in an adapted ``-B``-orthonormal basis.

    ``ambient`` is re-expressed in the adapted basis; ``k_indices`` and
    ``m_indices`` partition its index set.
    """

    ambient: LieAlgebraBasis
    k_indices: tuple[int, ...]
    m_indices: tuple[int, ...]
    name: str = ""

    def bracket_residuals(self) -> dict[str, float]:
        c = self.ambient.brackets
        K, M = list(self.k_indices), list(self.m_indices)

        def leak(a, b, out):
            if not a or not b or not out:
                return 0.0
            return float(np.max(np.abs(c[np.ix_(a, b, out)])))

        G = self.ambient.gram
        return {
            "[k,k] in k": leak(K, K, M),
            "[k,m] in m": leak(K, M, K),
            "[m,m] in k": leak(M, M, M),
            "k orthogonal m": float(np.max(np.abs(G[np.ix_(K, M)]))) if K and M else 0.0,
        }


def symmetric_pair(alg: LieAlgebraBasis, involution: Callable[[np.ndarray], np.ndarray], name: str = "") -> SymmetricPair:
    """Adapt the basis of ``alg`` to the +1/-1 eigenspaces of an involutive automorphism."""
    images = np.array([involution(x) for x in alg.matrices])
    S, resid = _coordinates(_real_vec(alg.matrices), _real_vec(images))
    if resid > 1e-10:
        raise ValueError("involution does not preserve the algebra")
    S = S.T  # columns: images of basis vectors
    S = 0.5 * (S + S.T)
    w, v = np.linalg.eigh(S)
    if np.max(np.abs(np.abs(w) - 1.0)) > 1e-8:
        raise ValueError("map is not an involution")
    order = np.argsort(-w, kind="stable")  # +1 eigenvectors first
    w, v = w[order], v[:, order]
    mats = np.einsum("ia,ibc->abc", v, alg.matrices)
    c, resid_c = _structure_constants(mats)
    adapted = LieAlgebraBasis(alg.family, alg.rank, mats, c, -killing_form(c), max(alg.closure_residual, resid_c))
    k = tuple(int(i) for i in np.flatnonzero(w > 0))
    m = tuple(int(i) for i in np.flatnonzero(w < 0))
    return SymmetricPair(adapted, k, m, name)
