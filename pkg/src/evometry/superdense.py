"""Dense coding where the payload is a unitary, not a bit pair.

Alice applies u to her half of a shared maximally entangled pair and
sends that half on. Bob measures both systems in the entangled basis
built from an orthogonal unitary family and reads outcome a with
probability |C_a|^2, the expansion weight of u. When u is itself a basis
element the outcome is deterministic and the scheme reduces to the
classical protocol: log2(d^2) symbols per transmitted qudit, one shared
pair consumed. Anyone holding only the transmitted half sees the
maximally mixed state whatever u was.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import OperatorBasis, UnitaryOperator, expand
from .linalg import as_matrix, max_entangled, partial_trace

BELL_ATOL = 1e-10
MARGINAL_ATOL = 1e-12


@dataclass(frozen=True)
class BellBasis:
    """The d^2 orthonormal entangled vectors (B_a (x) 1)|phi+>."""

    dim: int
    vectors: np.ndarray
    labels: tuple

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        gram = v.conj() @ v.T
        if np.abs(gram - np.eye(v.shape[0])).max() > BELL_ATOL:
            raise ValueError("encoded vectors are not orthonormal")
        d = self.dim
        for row in v:
            rho = partial_trace(np.outer(row, row.conj()), (d, d), keep=0)
            if np.abs(rho - np.eye(d) / d).max() > BELL_ATOL:
                raise ValueError(
                    "an encoded vector is not maximally entangled; "
                    "the basis must consist of unitaries"
                )
        object.__setattr__(self, "vectors", v)


@dataclass(frozen=True)
class ChannelTranscript:
    """What each party holds after one dense-coding round."""

    labels: tuple
    coefficients: np.ndarray
    probabilities: np.ndarray
    eavesdropper_marginal: np.ndarray
    counts: np.ndarray | None = None
    seed: int | None = None

    @property
    def shots(self) -> int:
        return 0 if self.counts is None else int(self.counts.sum())


def bell_basis(basis: OperatorBasis) -> BellBasis:
    """Lift an orthogonal unitary family to an entangled vector basis."""
    d = basis.dim
    phi = max_entangled(d)
    vectors = np.stack([
        np.kron(b, np.eye(d)) @ phi for b in basis.elements
    ])
    return BellBasis(d, vectors, basis.labels)


def eavesdropper_marginal(u, basis: OperatorBasis | None = None,
                          dim: int | None = None) -> np.ndarray:
    """Density matrix of the transmitted half alone: always 1/d.

    The basis argument is accepted for signature symmetry; the marginal
    does not depend on it, nor on u.
    """
    um = UnitaryOperator(as_matrix(u)).matrix
    d = um.shape[0]
    if basis is not None and basis.dim != d:
        raise ValueError("basis dimension does not match the unitary")
    if dim is not None and dim != d:
        raise ValueError("dim does not match the unitary")
    phi = max_entangled(d)
    sent = np.kron(um, np.eye(d)) @ phi
    return partial_trace(np.outer(sent, sent.conj()), (d, d), keep=0)


def superdense_send(u, basis: OperatorBasis, shots: int = 0,
                    seed: int | None = None) -> ChannelTranscript:
    """One round: encode u on the shared pair, decode in the Bell family.

    Exact outcome probabilities are |C_a|^2 from the unitary's
    expansion; a basis element encodes its own index with certainty.
    Alice need not know u: the transcript is computed from the state
    she produced, not from a lookup.
    """
    um = UnitaryOperator(as_matrix(u)).matrix
    if um.shape[0] != basis.dim:
        raise ValueError("unitary dimension does not match basis")
    coeffs = expand(um, basis)
    bell = bell_basis(basis)
    sent = np.kron(um, np.eye(basis.dim)) @ max_entangled(basis.dim)
    amplitudes = bell.vectors.conj() @ sent
    probs = np.abs(amplitudes) ** 2
    counts = None
    if shots:
        if seed is None:
            raise ValueError("seed is required when shots > 0")
        rng = np.random.default_rng(seed)
        drawn = rng.choice(probs.size, size=shots, p=probs / probs.sum())
        counts = np.bincount(drawn, minlength=probs.size)
    return ChannelTranscript(
        labels=basis.labels,
        coefficients=coeffs.coeffs,
        probabilities=probs,
        eavesdropper_marginal=eavesdropper_marginal(um),
        counts=counts,
        seed=seed,
    )
