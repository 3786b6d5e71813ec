"""Small dense linear-algebra helpers shared across the package."""
from __future__ import annotations

import math

import numpy as np

__all__ = [
    "as_matrix",
    "dag",
    "is_unitary",
    "random_unitary",
    "random_state",
    "max_entangled",
    "partial_trace",
    "entanglement_entropy",
    "shannon_entropy",
    "phase_fixed",
    "deterministic_eigh",
]


def as_matrix(op) -> np.ndarray:
    """Coerce an operator-like object (wrapper or array) to a complex ndarray."""
    return np.asarray(getattr(op, "matrix", op), dtype=complex)


def dag(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def is_unitary(a: np.ndarray, atol: float = 1e-10) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return np.abs(dag(a) @ a - np.eye(a.shape[0])).max() <= atol


def random_unitary(dim: int, rng) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix.

    rng may be a Generator or a seed.
    """
    rng = np.random.default_rng(rng)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_state(dim: int, rng) -> np.ndarray:
    """Haar-random unit vector. rng may be a Generator or a seed."""
    rng = np.random.default_rng(rng)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def max_entangled(dim: int) -> np.ndarray:
    """(1/sqrt(d)) sum_j |j>|j> as a vector on C^d (x) C^d."""
    v = np.zeros(dim * dim, dtype=complex)
    v[:: dim + 1] = 1 / math.sqrt(dim)
    return v


def partial_trace(rho: np.ndarray, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite density matrix.

    dims gives the factor dimensions in kron order and keep selects the
    surviving factor (0 or 1).
    """
    da, db = dims
    r = np.asarray(rho).reshape(da, db, da, db)
    if keep == 0:
        return np.einsum("ijkj->ik", r)
    if keep == 1:
        return np.einsum("ijil->jl", r)
    raise ValueError("keep must be 0 or 1")


def entanglement_entropy(psi: np.ndarray, dims: tuple[int, int]) -> float:
    """Entanglement entropy (base 2) of a bipartite pure state vector."""
    s = np.linalg.svd(np.asarray(psi).reshape(dims), compute_uv=False)
    p = s * s
    return shannon_entropy(p[p > 1e-15])


def shannon_entropy(p) -> float:
    """Shannon entropy in bits; zero-probability entries are skipped."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 1e-15]
    return float(-(nz * np.log2(nz)).sum()) if nz.size else 0.0


def phase_fixed(v: np.ndarray) -> np.ndarray:
    """Rescale a vector's global phase so its largest-magnitude entry is
    real and positive."""
    k = int(np.argmax(np.abs(v)))
    ph = v[k] / abs(v[k])
    return v * ph.conj()


def deterministic_eigh(h: np.ndarray, degeneracy_tol: float = 1e-10):
    """Hermitian eigendecomposition with eigenvalues descending and a
    deterministic gauge inside degenerate eigenspaces.

    Within each group of eigenvalues that agree to degeneracy_tol, the
    eigenvectors are rebuilt by projecting the canonical basis vectors
    e_0, e_1, ... onto the eigenspace and Gram-Schmidt orthonormalizing
    them in that order; each resulting vector has its global phase fixed
    by phase_fixed. The output therefore does not depend on the
    arbitrary rotation LAPACK picks inside a degenerate block.
    """
    h = np.asarray(h)
    vals, vecs = np.linalg.eigh(h)
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    n = vals.size
    out = np.zeros_like(vecs)
    i = 0
    while i < n:
        j = i + 1
        while j < n and abs(vals[j] - vals[i]) <= degeneracy_tol:
            j += 1
        block = vecs[:, i:j]
        proj = block @ dag(block)
        cols: list[np.ndarray] = []
        for k in range(n):
            v = proj[:, k].copy()
            for c in cols:
                v -= c * np.vdot(c, v)
            nv = np.linalg.norm(v)
            if nv > 1e-6:
                cols.append(v / nv)
            if len(cols) == j - i:
                break
        if len(cols) < j - i:
            # ill-conditioned projections; fall back to the LAPACK block,
            # orthogonalized against whatever was already accepted
            for k in range(j - i):
                v = block[:, k].copy()
                for c in cols:
                    v -= c * np.vdot(c, v)
                nv = np.linalg.norm(v)
                if nv > 1e-8:
                    cols.append(v / nv)
                if len(cols) == j - i:
                    break
        for m, c in enumerate(cols):
            out[:, i + m] = phase_fixed(c)
        i = j
    return vals, out
