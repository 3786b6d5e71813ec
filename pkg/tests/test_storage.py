import numpy as np
import pytest

from evometry import (
    EvolutionSequence,
    KrausMap,
    PureState,
    compression_rate,
    kraus_from_ancilla_basis,
    named_channel,
    probabilistic_retrieve,
    retrieval_statistics,
    stinespring,
    storage_overlap,
    store,
    stored_state,
    typical_compress,
    verify_sequence,
)
from evometry.gates import H, I2, X, Z
from evometry.linalg import max_entangled, random_unitary


def test_stored_state_of_identity_is_max_entangled():
    v = stored_state(I2)
    assert np.abs(v - max_entangled(2)).max() < 1e-12


def test_stored_states_of_orthogonal_unitaries_are_orthogonal():
    vx = stored_state(X)
    vz = stored_state(Z)
    assert abs(np.vdot(vx, vz)) < 1e-12
    assert abs(np.linalg.norm(vx) - 1.0) < 1e-12


def test_storage_overlap_is_normalized_trace():
    rng = np.random.default_rng(41)
    u = random_unitary(2, rng)
    v = random_unitary(2, rng)
    want = np.trace(u.conj().T @ v) / 2
    assert abs(storage_overlap(u, v) - want) < 1e-12


def test_stored_state_rejects_zero_operator():
    with pytest.raises(ValueError):
        stored_state(np.zeros((2, 2), dtype=complex))


def test_store_builds_unit_norm_records():
    m = named_channel("dephasing:0.5")
    rec = store(m, (0, 1, 1, 0))
    assert len(rec.sequence) == 4
    for v in rec.states:
        assert abs(np.linalg.norm(v) - 1.0) < 1e-10


def test_sequence_index_range_checked():
    m = named_channel("dephasing:0.5")
    with pytest.raises(ValueError):
        EvolutionSequence(m, (0, 2))


def test_compression_rate_equals_map_entropy():
    assert abs(compression_rate(named_channel("dephasing:0.5")) - 1.0) < 1e-12
    assert abs(compression_rate(named_channel("unitary:H"))) < 1e-12


def test_typical_compress_frozen_binary_case():
    """p = (0.9, 0.1), n = 16, delta = 0.1 keeps 120 strings."""
    t = typical_compress(named_channel("dephasing:0.1"), 16, 0.1)
    assert t.kept_dim == 120
    assert abs(t.rate - 0.4316806622255324) < 1e-12
    assert abs(t.infidelity_bound - 0.7254784905404694) < 1e-12


def test_typical_compress_frozen_three_quarters_case():
    t = typical_compress(named_channel("dephasing:0.25"), 10, 0.15)
    assert t.kept_dim == 165
    assert abs(t.rate - 0.7366322214245816) < 1e-12
    assert abs(t.infidelity_bound - 0.46815013885498047) < 1e-12


def test_typical_compress_uniform_keeps_everything():
    t = typical_compress(named_channel("dephasing:0.5"), 10, 0.0)
    assert t.kept_dim == 1024
    assert abs(t.rate - 1.0) < 1e-12
    assert t.infidelity_bound < 1e-12


def test_typical_compress_unitary_is_free():
    t = typical_compress(named_channel("unitary:H"), 12, 0.1)
    assert t.kept_dim == 1
    assert t.rate == 0.0
    assert t.infidelity_bound == 0.0


def test_typical_compress_caps_block_length():
    with pytest.raises(ValueError):
        typical_compress(named_channel("dephasing:0.5"), 21, 0.1)


def test_typical_rate_approaches_entropy():
    h = -(0.75 * np.log2(0.75) + 0.25 * np.log2(0.25))
    m = named_channel("dephasing:0.25")
    dist = [abs(typical_compress(m, n, 0.1).rate - h) for n in (4, 8, 12, 16)]
    assert all(a > b for a, b in zip(dist, dist[1:]))
    assert dist[-1] < 0.02


def test_verify_sequence_accepts_honest_record():
    m = named_channel("dephasing:0.5")
    dil = stinespring(m)
    rep = kraus_from_ancilla_basis(dil)
    weights = np.array([np.trace(op.conj().T @ op).real / 2
                        for op in rep.operators])
    rng = np.random.default_rng(9)
    claim = tuple(int(i) for i in rng.choice(2, size=60, p=weights))
    rec = verify_sequence(dil, None, EvolutionSequence(rep, claim), 9)
    assert rec.accepted
    assert rec.sampled == rec.claimed == claim
    assert np.abs(np.asarray(rec.step_weights) - 0.5).max() < 1e-12


def test_verify_sequence_rejects_corrupted_record():
    m = named_channel("dephasing:0.5")
    dil = stinespring(m)
    rep = kraus_from_ancilla_basis(dil)
    weights = np.array([np.trace(op.conj().T @ op).real / 2
                        for op in rep.operators])
    rng = np.random.default_rng(9)
    claim = list(int(i) for i in rng.choice(2, size=60, p=weights))
    claim[7] ^= 1
    rec = verify_sequence(dil, None, EvolutionSequence(rep, tuple(claim)), 9)
    assert not rec.accepted


def test_verify_sequence_checks_representation():
    dil = stinespring(named_channel("dephasing:0.5"))
    wrong = named_channel("dephasing:0.3")
    with pytest.raises(ValueError):
        verify_sequence(dil, None, EvolutionSequence(wrong, (0, 1)), 3)


def test_phase_gate_retrieval_heralds_at_half():
    """A stored phase gate spans two canonical elements: herald rate 1/2."""
    s = np.diag([1.0, 1j])
    m = KrausMap((np.sqrt(0.5) * s, np.sqrt(0.5) * s.conj().T))
    psi = PureState(np.array([0.6, 0.8], dtype=complex))
    out = probabilistic_retrieve(0, m, psi, 5)
    assert abs(out.herald_probability - 0.5) < 1e-12
    stats = retrieval_statistics(0, m, psi, 4000, 5)
    assert stats["support_dim"] == 2
    assert abs(stats["success_fidelity"] - 1.0) < 1e-9
    sigma = np.sqrt(0.25 / 4000)
    assert abs(stats["empirical_rate"] - 0.5) <= 5 * sigma


def test_generic_unitary_retrieval_heralds_at_quarter():
    """An element filling all four canonical slots heralds at 1/4."""
    rng = np.random.default_rng(43)
    u = random_unitary(2, rng)
    m = KrausMap(tuple(u @ p / 2 for p in (I2, X, Z, X @ Z)))
    psi = PureState(np.array([1.0, 0.0], dtype=complex))
    stats = retrieval_statistics(0, m, psi, 4000, 44)
    assert stats["support_dim"] == 4
    assert abs(stats["herald_probability"] - 0.25) < 1e-12
    assert abs(stats["success_fidelity"] - 1.0) < 1e-9


def test_identity_retrieval_always_succeeds():
    m = named_channel("unitary:I")
    psi = PureState(np.array([0.0, 1.0], dtype=complex))
    out = probabilistic_retrieve(0, m, psi, 1)
    assert out.heralded_success
    assert abs(out.herald_probability - 1.0) < 1e-12


def test_retrieval_output_is_element_applied():
    m = named_channel("dephasing:0.5")
    psi = PureState(np.array([0.6, 0.8], dtype=complex))
    hits = 0
    for seed in range(30):
        out = probabilistic_retrieve(1, m, psi, seed)
        if out.heralded_success:
            hits += 1
            want = Z @ psi.amplitudes
            want /= np.linalg.norm(want)
            phase = np.vdot(want, out.output.amplitudes)
            assert abs(abs(phase) - 1.0) < 1e-9
    assert hits > 0


def test_retrieval_herald_is_scale_invariant():
    # sqrt-weighted unitary elements still herald at 1/support
    m = named_channel("dephasing:0.25")
    psi = PureState(np.array([1.0, 1.0], dtype=complex) / np.sqrt(2))
    out = probabilistic_retrieve(0, m, psi, 2)
    assert abs(out.herald_probability - 0.5) < 1e-12
