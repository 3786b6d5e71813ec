"""Storing realized evolutions as states, compressing, verifying, retrieving.

A sequence of operator elements drawn from a channel can be recorded by
letting each element act on half of a maximally entangled pair. In the
canonical representation the records are mutually orthogonal, so a run
of n draws is a classical string in disguise and compresses at the map
entropy. A stored evolution can later be pushed onto an unknown state: a
controlled application of the canonical elements followed by a Fourier
readout of the storage register heralds, on its uniform-phase outcome,
the exact action of the stored operator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import KrausMap, StinespringDilation, canonical_kraus
from .channels import entropy as map_entropy
from .channels import kraus_from_ancilla_basis
from .linalg import dag, max_entangled
from .measure import PureState

STORE_ATOL = 1e-10
MATCH_ATOL = 1e-9
TRIM = 1e-12
MAX_EXACT_N = 20


@dataclass(frozen=True)
class EvolutionSequence:
    """Which operator element acted at each of n steps."""

    map: KrausMap
    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        k = len(self.map)
        for i in idx:
            if not 0 <= i < k:
                raise ValueError(f"index {i} outside the map's {k} elements")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class StoredEvolution:
    """Per-step storage states, unit vectors on the doubled system."""

    sequence: EvolutionSequence
    states: tuple

    def __post_init__(self):
        for v in self.states:
            if abs(np.linalg.norm(v) - 1.0) > STORE_ATOL:
                raise ValueError("storage states must be unit vectors")


@dataclass(frozen=True)
class RetrievalOutcome:
    """One retrieval attempt: herald flag, post-measurement system state,
    which storage outcome was observed, and the exact herald weight."""

    heralded_success: bool
    output: PureState
    outcome_index: int
    herald_probability: float


@dataclass(frozen=True)
class VerificationRecord:
    """Sampled ancilla record compared against a claimed sequence."""

    accepted: bool
    sampled: tuple
    claimed: tuple
    step_weights: np.ndarray


@dataclass(frozen=True)
class TypicalCompression:
    """Size and fidelity cost of keeping only the typical records."""

    kept_dim: int
    infidelity_bound: float
    rate: float


def stored_state(op: np.ndarray, atol: float = TRIM) -> np.ndarray:
    """Normalized record (M (x) 1)|phi+> of a single operator."""
    op = np.asarray(op, dtype=complex)
    d = op.shape[0]
    v = np.kron(op, np.eye(d)) @ max_entangled(d)
    n = np.linalg.norm(v)
    if n <= atol:
        raise ValueError("operator annihilates the entangled record state")
    return v / n


def storage_overlap(op_a: np.ndarray, op_b: np.ndarray) -> complex:
    """Inner product of two normalized records.

    Equals tr(A^dag B)/d when both operators satisfy tr(M^dag M) = d
    (unitaries in particular); in general the trace inner product is
    divided by the two record norms.
    """
    return complex(np.vdot(stored_state(op_a), stored_state(op_b)))


def store(kraus: KrausMap, indices) -> StoredEvolution:
    """Record a realized sequence of operator elements as states."""
    seq = (
        indices
        if isinstance(indices, EvolutionSequence)
        else EvolutionSequence(kraus, tuple(indices))
    )
    states = tuple(stored_state(kraus.operators[i]) for i in seq.indices)
    return StoredEvolution(seq, states)


def compression_rate(kraus: KrausMap) -> float:
    """Bits per use needed to store draws from the map: its entropy."""
    return map_entropy(kraus)


def typical_compress(kraus: KrausMap, n: int, delta: float) -> TypicalCompression:
    """Exact typical-set size for n draws from the canonical spectrum.

    Keeps the composition classes whose per-draw surprisal sits within
    delta of the map entropy; kept_dim counts the records kept (an exact
    integer), infidelity_bound is the discarded probability mass, and
    rate is log2(kept_dim)/n. Enumeration is exact, hence the n <= 20
    cap.
    """
    if n < 1 or n > MAX_EXACT_N:
        raise ValueError(f"n must lie in [1, {MAX_EXACT_N}] for exact enumeration")
    p = canonical_kraus(kraus).probabilities
    if p.size == 1:
        return TypicalCompression(1, 0.0, 0.0)
    surprisal = -np.log2(p)
    ent = float(p @ surprisal)
    kept = 0
    mass_terms = []
    # compositions of n over the support, as occupation counts
    for counts in _compositions(n, p.size):
        s = sum(c * surprisal[j] for j, c in enumerate(counts)) / n
        if abs(s - ent) <= delta + 1e-12:
            size = _multinomial(n, counts)
            kept += size
            mass_terms.append(
                size * math.prod(p[j] ** c for j, c in enumerate(counts))
            )
    mass = math.fsum(mass_terms)
    rate = math.log2(kept) / n if kept else 0.0
    return TypicalCompression(kept, max(0.0, 1.0 - mass), rate)


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _multinomial(n, counts) -> int:
    out = 1
    rest = n
    for c in counts[:-1]:
        out *= math.comb(rest, c)
        rest -= c
    return out


def verify_sequence(dil: StinespringDilation, ancilla_basis,
                    claimed: EvolutionSequence, seed) -> VerificationRecord:
    """Check a claimed draw record against fresh runs of the dilation.

    The representation selected by the ancilla basis must match the
    claimed map's operator elements within 1e-9; each step then yields
    outcome i with the Born weight tr(M_i^dag M_i)/d on a maximally
    entangled input, and the claim is accepted only if every sampled
    outcome equals the claimed one. A corrupted claim survives exactly
    with the probability of the disagreeing outcomes.
    """
    rep = kraus_from_ancilla_basis(dil, ancilla_basis)
    claimed_ops = claimed.map.operators
    if len(rep) != len(claimed_ops):
        raise ValueError("ancilla basis selects a different element count "
                         "than the claimed map")
    dev = max(
        np.abs(a - b).max() for a, b in zip(rep.operators, claimed_ops)
    )
    if dev > MATCH_ATOL:
        raise ValueError(
            "representation selected by the ancilla basis does not match "
            f"the claimed map (deviation {dev:.3e})"
        )
    d = rep.dim
    weights = np.array(
        [np.trace(dag(m) @ m).real / d for m in rep.operators]
    )
    rng = np.random.default_rng(seed)
    sampled = tuple(
        int(i) for i in
        rng.choice(weights.size, size=len(claimed), p=weights / weights.sum())
    )
    return VerificationRecord(
        accepted=sampled == claimed.indices,
        sampled=sampled,
        claimed=claimed.indices,
        step_weights=weights,
    )


def _retrieval_rows(kraus: KrausMap, index: int, psi: PureState):
    """Storage-register branches of the controlled-application protocol.

    Row m carries the canonical element m applied to psi, weighted by
    the stored operator's coefficient in the canonical expansion.
    """
    canon = canonical_kraus(kraus)
    d = kraus.dim
    if psi.dim != d:
        raise ValueError("state dimension does not match the map")
    m_op = kraus.operators[index]
    coeff = np.array([
        np.trace(dag(k) @ m_op) / (d * p)
        for k, p in zip(canon.operators, canon.probabilities)
    ])
    resid = m_op - sum(
        c * k for c, k in zip(coeff, canon.operators)
    )
    if np.linalg.norm(resid) > MATCH_ATOL * max(1.0, np.linalg.norm(m_op)):
        raise ValueError("stored operator lies outside the map's support")
    nsq = float(np.sum(np.abs(coeff) ** 2 * canon.probabilities))
    rows = np.stack([
        c * (k @ psi.amplitudes) / np.sqrt(nsq)
        for c, k in zip(coeff, canon.operators)
    ])
    return rows


def _fourier_branches(rows: np.ndarray):
    """Post-measurement branches of the Fourier readout, with weights."""
    big_d = rows.shape[0]
    omega = np.exp(2j * np.pi / big_d)
    kernel = omega ** np.outer(np.arange(big_d), np.arange(big_d))
    branches = (kernel.conj() @ rows) / np.sqrt(big_d)
    weights = np.sum(np.abs(branches) ** 2, axis=1)
    return branches, weights / weights.sum()


def probabilistic_retrieve(index: int, kraus: KrausMap, psi: PureState,
                           seed) -> RetrievalOutcome:
    """Push a stored operator element onto an unknown state, heralded.

    The storage register, holding the record of element M_i expanded
    over the D canonical elements, controls which canonical element
    acts on psi; a Fourier-basis readout of the register then heralds
    success on its uniform-phase outcome, which occurs with probability
    d ||M_i psi||^2 / (tr(M_i^dag M_i) D) and leaves the system in
    exactly M_i|psi> normalized. This is 1/D whenever the stored
    element is unitary up to scale. Other outcomes are returned as
    failures with their post-measurement state.
    """
    rows = _retrieval_rows(kraus, index, psi)
    branches, weights = _fourier_branches(rows)
    rng = np.random.default_rng(seed)
    k = int(rng.choice(weights.size, p=weights))
    out = branches[k]
    return RetrievalOutcome(
        heralded_success=k == 0,
        output=PureState(out / np.linalg.norm(out)),
        outcome_index=k,
        herald_probability=float(weights[0]),
    )


def retrieval_statistics(index: int, kraus: KrausMap, psi: PureState,
                         trials: int, seed) -> dict:
    """Herald rate over many retrieval attempts, sampled in one stream."""
    rows = _retrieval_rows(kraus, index, psi)
    branches, weights = _fourier_branches(rows)
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(weights.size, size=trials, p=weights)
    successes = int(np.count_nonzero(outcomes == 0))
    target = branches[0] / np.linalg.norm(branches[0])
    expected = kraus.operators[index] @ psi.amplitudes
    expected /= np.linalg.norm(expected)
    return {
        "support_dim": int(weights.size),
        "herald_probability": float(weights[0]),
        "trials": int(trials),
        "successes": successes,
        "empirical_rate": successes / trials if trials else 0.0,
        "success_fidelity": float(abs(np.vdot(expected, target))),
    }
