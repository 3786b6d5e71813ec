"""Schmidt structure of bipartite unitaries and interaction concentration.

A unitary acting on A (x) B expands over products of local orthogonal
unitary bases; the singular values of the coefficient matrix give a
Schmidt form sum_m d_m A_m (x) B_m with trace-orthonormal local
operators, and the entropy of d_m^2 measures how entangling the
interaction is. Many weakly entangling copies can be concentrated: a
collective two-time readout on n copies of alpha 1(x)1 + beta XX
projects onto the sector with k identity slots, leaving an equally
weighted block of C(n, k) terms, so the typical block size grows like
2^(n S).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import OperatorBasis, pauli_basis, weyl_basis
from .channels import KrausMap
from .gates import X
from .linalg import as_matrix, dag, deterministic_eigh, shannon_entropy

SCHMIDT_ATOL = 1e-10
RECON_ATOL = 1e-9
TRIM = 1e-12
MAX_EXACT_N = 4
MAX_COMB_N = 64


@dataclass(frozen=True)
class BipartiteUnitary:
    """A unitary on two subsystems, factor ordering A (x) B."""

    dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        da, db = self.dims
        m = np.asarray(as_matrix(self.matrix), dtype=complex)
        if m.shape != (da * db, da * db):
            raise ValueError("matrix shape does not match dims")
        if np.abs(m @ dag(m) - np.eye(da * db)).max() > SCHMIDT_ATOL:
            raise ValueError("matrix is not unitary")
        object.__setattr__(self, "dims", (int(da), int(db)))
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class OperatorSchmidt:
    """Schmidt form of an interaction: values and local operator pairs.

    The local operators are trace-orthonormal under (1/d) tr(A^dag B)
    on their own side; squared values sum to 1 for unitary input.
    """

    values: np.ndarray
    ops_a: tuple
    ops_b: tuple

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if abs(v @ v - 1.0) > SCHMIDT_ATOL:
            raise ValueError("squared Schmidt values must sum to 1")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def reconstruct(self) -> np.ndarray:
        return sum(
            s * np.kron(a, b)
            for s, a, b in zip(self.values, self.ops_a, self.ops_b)
        )


def _as_bipartite(u, dims=None) -> BipartiteUnitary:
    if isinstance(u, BipartiteUnitary):
        return u
    u = np.asarray(u, dtype=complex)
    if dims is None:
        root = math.isqrt(u.shape[0])
        if root * root != u.shape[0]:
            raise ValueError("dims required unless the matrix splits into "
                             "two equal factors")
        dims = (root, root)
    return BipartiteUnitary(tuple(dims), u)


def _default_basis(d: int) -> OperatorBasis:
    if d & (d - 1) == 0:
        return pauli_basis(dim=d)
    return weyl_basis(d)


def bipartite_expand(u, basis_a: OperatorBasis | None = None,
                     basis_b: OperatorBasis | None = None,
                     dims=None) -> np.ndarray:
    """Coefficient matrix C[m, n] = tr((A_m (x) B_n)^dag u)/(dA dB).

    Rows run over the A-side basis, columns over the B side; the
    squared magnitudes sum to 1 for unitary input.
    """
    bu = _as_bipartite(u, dims)
    da, db = bu.dims
    ba = basis_a if basis_a is not None else _default_basis(da)
    bb = basis_b if basis_b is not None else _default_basis(db)
    if ba.dim != da or bb.dim != db:
        raise ValueError("basis dimensions do not match the interaction")
    u4 = bu.matrix.reshape(da, db, da, db)
    coeff = np.empty((da * da, db * db), dtype=complex)
    for m, am in enumerate(ba.elements):
        # partial trace of (A_m^dag (x) 1) u over side A
        reduced = np.einsum("rs,rjst->jt", am.conj(), u4)
        for n, bn in enumerate(bb.elements):
            coeff[m, n] = np.trace(dag(bn) @ reduced) / (da * db)
    return coeff


def operator_schmidt(u, basis_a: OperatorBasis | None = None,
                     basis_b: OperatorBasis | None = None,
                     dims=None) -> OperatorSchmidt:
    """Diagonalize the coefficient matrix into a Schmidt form.

    Values come out descending; degenerate groups are resolved by the
    deterministic eigenbasis convention so repeated runs agree. Local
    operators mix the basis elements by the singular vectors and are
    generally not unitary, but stay trace orthogonal.
    """
    bu = _as_bipartite(u, dims)
    da, db = bu.dims
    ba = basis_a if basis_a is not None else _default_basis(da)
    bb = basis_b if basis_b is not None else _default_basis(db)
    coeff = bipartite_expand(bu, ba, bb)
    w, left = deterministic_eigh(coeff @ dag(coeff))
    keep = w > TRIM
    w, left = w[keep], left[:, keep]
    values = np.sqrt(w)
    ops_a = tuple(
        sum(left[m, k] * ba.elements[m] for m in range(da * da))
        for k in range(values.size)
    )
    ops_b = []
    for k in range(values.size):
        right = dag(coeff) @ left[:, k] / values[k]
        ops_b.append(
            sum(right[n].conj() * bb.elements[n] for n in range(db * db))
        )
    return OperatorSchmidt(values, ops_a, tuple(ops_b))


def interaction_entanglement(u, basis_a=None, basis_b=None, dims=None) -> float:
    """Entropy in bits of the squared Schmidt values of an interaction."""
    schmidt = operator_schmidt(u, basis_a, basis_b, dims)
    return shannon_entropy(schmidt.values ** 2)


def induced_local_map(u, side: str = "A", other_state=None,
                      dims=None) -> KrausMap:
    """CP map seen by one side when the other is fixed and traced out.

    other_state None fixes the traced side in its first basis state; a
    vector fixes it there; "maximally_mixed" purifies the traced side
    instead, giving d^2 operator elements whose map entropy equals the
    interaction entanglement of u.
    """
    bu = _as_bipartite(u, dims)
    da, db = bu.dims
    u4 = bu.matrix.reshape(da, db, da, db)
    if side == "A":
        d_keep, d_other = da, db
        blocks = u4                           # [r, j, c, t]
    elif side == "B":
        d_keep, d_other = db, da
        blocks = u4.transpose(1, 0, 3, 2)     # [r, j, c, t]
    else:
        raise ValueError("side must be 'A' or 'B'")
    if isinstance(other_state, str):
        if other_state != "maximally_mixed":
            raise ValueError(f"unknown traced-side state {other_state!r}")
        ops = tuple(
            blocks[:, j, :, t] / np.sqrt(d_other)
            for j in range(d_other)
            for t in range(d_other)
        )
        return KrausMap(ops)
    if other_state is None:
        phi = np.zeros(d_other, dtype=complex)
        phi[0] = 1.0
    else:
        phi = np.asarray(other_state, dtype=complex).ravel()
        if phi.size != d_other:
            raise ValueError("traced-side state has the wrong dimension")
        phi = phi / np.linalg.norm(phi)
    ops = tuple(
        np.einsum("rct,t->rc", blocks[:, j], phi) for j in range(d_other)
    )
    return KrausMap(ops)


# ---------------------------------------------------------------------------
# concentration of n copies of alpha 1(x)1 + beta XX


@dataclass(frozen=True)
class ConcentrationRecord:
    """One sector of the collective readout: k identity slots remain."""

    n: int
    k: int
    term_count: int
    probability: float

    @property
    def term_amplitude(self) -> float:
        """Weight shared by every surviving term, 1/sqrt(C(n, k))."""
        return 1.0 / math.sqrt(self.term_count)


@dataclass(frozen=True)
class ConcentrationDistribution:
    """Full sector law of the collective readout on n copies."""

    n: int
    alpha: complex
    beta: complex
    probabilities: np.ndarray
    records: tuple
    mode: str
    sector_deviation: float | None = None
    samples: np.ndarray | None = None

    def yield_bits(self) -> float:
        return math.fsum(
            r.probability * math.log2(r.term_count) for r in self.records
        )

    def expected_term_count(self) -> float:
        return math.fsum(r.probability * r.term_count for r in self.records)


def _normalize_amplitudes(alpha, beta):
    alpha = complex(alpha)
    beta = (
        complex(np.sqrt(max(0.0, 1.0 - abs(alpha) ** 2)))
        if beta is None
        else complex(beta)
    )
    total = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(total - 1.0) > SCHMIDT_ATOL:
        raise ValueError(f"|alpha|^2 + |beta|^2 = {total} is not 1")
    return alpha, beta


def _sector_probabilities(n, alpha, beta):
    pa, pb = abs(alpha) ** 2, abs(beta) ** 2
    return np.array([
        math.comb(n, k) * pa ** k * pb ** (n - k) for k in range(n + 1)
    ])


def _pair_block(alpha, beta):
    return alpha * np.eye(4, dtype=complex) + beta * np.kron(X, X)


def concentration_sectors(n, alpha, beta=None):
    """Exact sector components G_k of the n-copy interaction (n <= 4).

    Qubits are ordered pairwise (A1, B1, A2, B2, ...). Per copy, the
    two-time readout conjugates the block by sigma_z on the A qubit:
    identity slots commute with it (+1), XX slots anticommute (-1), so
    the joint operator splits into sectors graded by the number of +1
    copies. Returns the list G_0..G_n with sum_k G_k equal to the full
    n-copy operator.
    """
    alpha, beta = _normalize_amplitudes(alpha, beta)
    if not 1 <= n <= MAX_EXACT_N:
        raise ValueError(f"exact sectors need 1 <= n <= {MAX_EXACT_N}")
    block = _pair_block(alpha, beta)
    full = block
    for _ in range(n - 1):
        full = np.kron(full, block)
    nq = 2 * n
    buckets = {0: full}
    for copy in range(n):
        signs = 1.0 - 2.0 * (
            (np.arange(2 ** nq) >> (nq - 1 - 2 * copy)) & 1
        )
        nxt = {}
        for count, mat in buckets.items():
            flipped = signs[:, None] * mat * signs[None, :]
            up = 0.5 * (mat + flipped)
            down = 0.5 * (mat - flipped)
            nxt[count + 1] = nxt.get(count + 1, 0) + up
            nxt[count] = nxt.get(count, 0) + down
        buckets = nxt
    return [buckets[k] for k in range(n + 1)]


def concentrate(n, alpha, beta=None, mode: str = "combinatorial",
                seed=None, shots: int = 0) -> ConcentrationDistribution:
    """Sector law of the collective two-time readout on n copies.

    Combinatorial mode evaluates P(k) = C(n,k) |alpha|^{2k}
    |beta|^{2(n-k)} exactly up to n = 64. Exact-matrix mode (n <= 4)
    additionally builds the 4^n-dimensional operator, projects it onto
    the readout sectors, and records the largest deviation between the
    sector weights and the combinatorial law. With shots > 0 a seeded
    stream draws that many sector outcomes.
    """
    alpha, beta = _normalize_amplitudes(alpha, beta)
    if n < 1:
        raise ValueError("n must be at least 1")
    probs = _sector_probabilities(n, alpha, beta)
    deviation = None
    if mode == "exact-matrix":
        sectors = concentration_sectors(n, alpha, beta)
        weights = np.array([np.linalg.norm(g) ** 2 for g in sectors])
        weights /= weights.sum()
        deviation = float(np.abs(weights - probs).max())
    elif mode == "combinatorial":
        if n > MAX_COMB_N:
            raise ValueError(f"combinatorial mode capped at n = {MAX_COMB_N}")
    else:
        raise ValueError("mode must be 'exact-matrix' or 'combinatorial'")
    records = tuple(
        ConcentrationRecord(n, k, math.comb(n, k), float(probs[k]))
        for k in range(n + 1)
    )
    samples = None
    if shots:
        if seed is None:
            raise ValueError("seed is required when shots > 0")
        rng = np.random.default_rng(seed)
        samples = rng.choice(n + 1, size=shots, p=probs / probs.sum())
    return ConcentrationDistribution(
        n, alpha, beta, probs, records, mode, deviation, samples
    )


def concentration_yield(n, alpha, beta=None) -> float:
    """Expected bits of block size: sum_k P(k) log2 C(n, k)."""
    alpha, beta = _normalize_amplitudes(alpha, beta)
    probs = _sector_probabilities(n, alpha, beta)
    return math.fsum(
        float(probs[k]) * math.log2(math.comb(n, k)) for k in range(n + 1)
    )


def expected_term_count(n, alpha, beta=None) -> float:
    """Expected number of equally weighted surviving terms."""
    alpha, beta = _normalize_amplitudes(alpha, beta)
    probs = _sector_probabilities(n, alpha, beta)
    return math.fsum(
        float(probs[k]) * math.comb(n, k) for k in range(n + 1)
    )
