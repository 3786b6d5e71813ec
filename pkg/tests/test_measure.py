import numpy as np
import pytest

from evometry import (
    NotAnEigenoperator,
    OutcomeDistribution,
    PureState,
    TwoTimeObservable,
    circuit_end_state,
    expand,
    measure_choi_side,
    measure_which_unitary,
    measure_which_unitary_qudit,
    observable_commutator_norm,
    pauli_basis,
    rotate_basis,
    temporal_eigenvalue,
    weyl_basis,
    which_unitary_distribution,
)
from evometry.gates import H, I2, X, Y, Z
from evometry.linalg import entanglement_entropy, max_entangled, random_state, random_unitary


def field_unitary(bt):
    return np.cos(bt) * I2 - 1j * np.sin(bt) * Z


def test_field_example_exact_probabilities():
    """cos(Bt) 1 - i sin(Bt) Z at Bt = pi/3 splits 1/4 : 3/4."""
    u = field_unitary(np.pi / 3)
    dist = which_unitary_distribution(u, pauli_basis(dim=2))
    assert np.abs(dist.probabilities - np.array([0.25, 0.0, 0.0, 0.75])).max() < 1e-12


def test_field_example_circuit_matches_analytic():
    u = field_unitary(np.pi / 3)
    psi = np.array([1.0, 0.0], dtype=complex)
    dist, results = measure_which_unitary(u, pauli_basis(dim=2), psi)
    assert np.abs(dist.probabilities - np.array([0.25, 0.0, 0.0, 0.75])).max() < 1e-10
    outcomes = sorted(r.outcome for r in results)
    assert outcomes == [0, 3]


def test_prefaced_basis_gives_certainty():
    # expanding u against the family (u, u s_i) leaves no which-element doubt
    u = field_unitary(0.7)
    dist = which_unitary_distribution(u, pauli_basis(u0=u, dim=2))
    assert abs(dist.probabilities[0] - 1.0) < 1e-12
    assert dist.probabilities[1:].max() < 1e-12


def test_hermitian_combination_splits_evenly():
    u = (X + Z) / np.sqrt(2)
    dist = which_unitary_distribution(u, pauli_basis(dim=2))
    assert np.abs(dist.probabilities - np.array([0.0, 0.5, 0.0, 0.5])).max() < 1e-12


def test_circuit_probabilities_match_expansion():
    rng = np.random.default_rng(21)
    b = pauli_basis(dim=2)
    psi = np.array([1.0, 0.0], dtype=complex)
    for _ in range(25):
        u = random_unitary(2, rng)
        expect = np.abs(expand(u, b).coeffs) ** 2
        dist, _ = measure_which_unitary(u, b, psi)
        assert np.abs(dist.probabilities - expect).max() < 1e-10


def test_distribution_is_state_independent():
    rng = np.random.default_rng(22)
    u = random_unitary(2, rng)
    b = pauli_basis(dim=2)
    ref, _ = measure_which_unitary(u, b, np.array([1.0, 0.0]))
    for _ in range(15):
        psi = random_state(2, rng)
        dist, _ = measure_which_unitary(u, b, psi)
        assert np.abs(dist.probabilities - ref.probabilities).max() < 1e-10


def test_entangled_bystander_rides_along():
    """Measuring the system half of a Bell pair keeps its entanglement."""
    rng = np.random.default_rng(23)
    u = random_unitary(2, rng)
    phi = max_entangled(2)
    dist, results = measure_which_unitary(u, pauli_basis(dim=2), phi)
    assert abs(dist.probabilities.sum() - 1.0) < 1e-12
    for r in results:
        ent = entanglement_entropy(r.collapsed.amplitudes, (2, 2))
        assert abs(ent - 1.0) < 1e-9


def test_collapsed_state_is_basis_element_applied():
    u = field_unitary(np.pi / 3)
    psi = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
    _, results = measure_which_unitary(u, pauli_basis(dim=2), psi)
    b = pauli_basis(dim=2)
    for r in results:
        target = b.elements[r.outcome] @ psi
        target /= np.linalg.norm(target)
        overlap = abs(np.vdot(target, r.collapsed.amplitudes))
        assert abs(overlap - 1.0) < 1e-10


def test_shots_need_a_seed():
    u = field_unitary(0.3)
    with pytest.raises(ValueError):
        measure_which_unitary(u, pauli_basis(dim=2), np.array([1.0, 0.0]),
                              shots=10)


def test_sampled_counts_are_reproducible():
    u = field_unitary(np.pi / 3)
    psi = np.array([1.0, 0.0], dtype=complex)
    d1, _ = measure_which_unitary(u, pauli_basis(dim=2), psi, shots=500, seed=7)
    d2, _ = measure_which_unitary(u, pauli_basis(dim=2), psi, shots=500, seed=7)
    assert d1.shots == 500
    assert np.array_equal(d1.counts, d2.counts)
    assert np.array_equal(d1.shot_outcomes, d2.shot_outcomes)
    # only the identity and Z outcomes carry weight for this unitary
    assert d1.counts[1] == 0 and d1.counts[2] == 0


def test_empirical_frequencies_track_probabilities():
    u = field_unitary(np.pi / 3)
    psi = np.array([1.0, 0.0], dtype=complex)
    shots = 20000
    dist, _ = measure_which_unitary(u, pauli_basis(dim=2), psi,
                                    shots=shots, seed=19)
    freq = dist.counts / shots
    sigma = np.sqrt(dist.probabilities * (1 - dist.probabilities) / shots)
    assert np.all(np.abs(freq - dist.probabilities) <= 5 * sigma + 1e-12)


def test_two_qubit_pauli_circuit():
    rng = np.random.default_rng(24)
    b = pauli_basis(dim=4)
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1.0
    u = random_unitary(4, rng)
    expect = np.abs(expand(u, b).coeffs) ** 2
    dist, _ = measure_which_unitary(u, b, psi)
    assert np.abs(dist.probabilities - expect).max() < 1e-10


def test_qudit_circuit_matches_expansion():
    rng = np.random.default_rng(25)
    b = weyl_basis(3)
    psi = np.zeros(3, dtype=complex)
    psi[0] = 1.0
    for _ in range(10):
        u = random_unitary(3, rng)
        expect = np.abs(expand(u, b).coeffs) ** 2
        dist, _ = measure_which_unitary_qudit(u, b, psi)
        assert np.abs(dist.probabilities - expect).max() < 1e-10


def test_qudit_basis_element_is_deterministic():
    b = weyl_basis(3)
    psi = np.array([1.0, 0.0, 0.0], dtype=complex)
    dist, results = measure_which_unitary_qudit(b.elements[5], b, psi)
    expect = np.zeros(9)
    expect[5] = 1.0
    assert np.abs(dist.probabilities - expect).max() < 1e-12
    assert len(results) == 1 and results[0].outcome == 5


def test_qudit_end_states_are_fourier_orthogonal():
    """Ancilla end states for distinct basis elements are orthogonal."""
    d = 3
    b = weyl_basis(d)
    psi = np.zeros(d, dtype=complex)
    psi[0] = 1.0
    ends = []
    for el in b.elements:
        joint = circuit_end_state(el, b, psi)
        # the joint state is (ancilla vector) x (el @ psi); contract out
        # the known system factor to recover the ancilla end state
        v = el @ psi
        v /= np.linalg.norm(v)
        anc = joint @ v.conj()
        anc /= np.linalg.norm(anc)
        assert np.abs(np.abs(anc) - 1.0 / d).max() < 1e-10
        ends.append(anc)
    g = np.array([[np.vdot(a, c) for c in ends] for a in ends])
    assert np.abs(g - np.eye(d * d)).max() < 1e-10


def test_measure_rejects_non_unitary():
    bad = np.diag([1.0, 0.5]).astype(complex)
    with pytest.raises(ValueError):
        measure_which_unitary(bad, pauli_basis(dim=2), np.array([1.0, 0.0]))
    bad3 = np.diag([1.0, 1.0, 0.0]).astype(complex)
    with pytest.raises(ValueError):
        measure_which_unitary_qudit(bad3, weyl_basis(3),
                                    np.array([1.0, 0.0, 0.0]))


def test_choi_side_backend_agrees():
    rng = np.random.default_rng(26)
    b = pauli_basis(dim=2)
    for _ in range(10):
        u = random_unitary(2, rng)
        expect = np.abs(expand(u, b).coeffs) ** 2
        dist, _ = measure_choi_side(u, b)
        assert np.abs(dist.probabilities - expect).max() < 1e-10


def test_choi_side_handles_rotated_basis():
    rng = np.random.default_rng(27)
    k = random_unitary(4, rng)
    rb = rotate_basis(pauli_basis(dim=2), k)
    u = random_unitary(2, rng)
    expect = np.abs(expand(u, rb).coeffs) ** 2
    dist, _ = measure_choi_side(u, rb)
    assert np.abs(dist.probabilities - expect).max() < 1e-10


def test_temporal_eigenvalue_qubit_cases():
    obs_z = TwoTimeObservable("z", 2)
    obs_x = TwoTimeObservable("x", 2)
    assert abs(temporal_eigenvalue(obs_z, I2) - 1.0) < 1e-12
    assert abs(temporal_eigenvalue(obs_z, X) + 1.0) < 1e-12
    assert abs(temporal_eigenvalue(obs_z, Y) + 1.0) < 1e-12
    assert abs(temporal_eigenvalue(obs_z, Z) - 1.0) < 1e-12
    assert abs(temporal_eigenvalue(obs_x, X) - 1.0) < 1e-12
    assert abs(temporal_eigenvalue(obs_x, Z) + 1.0) < 1e-12


def test_temporal_eigenvalue_rejects_superposition():
    with pytest.raises(NotAnEigenoperator):
        temporal_eigenvalue(TwoTimeObservable("z", 2), H)


def test_temporal_eigenvalue_weyl_phases():
    """Z-family reads off zeta^nu, X-family zeta^{-mu}, on Z^mu X^nu."""
    d = 3
    zeta = np.exp(2j * np.pi / d)
    b = weyl_basis(d)
    obs_z = TwoTimeObservable("z", d)
    obs_x = TwoTimeObservable("x", d)
    for mu in range(d):
        for nu in range(d):
            el = b.elements[mu * d + nu]
            assert abs(temporal_eigenvalue(obs_z, el) - zeta ** nu) < 1e-12
            assert abs(temporal_eigenvalue(obs_x, el) - zeta ** (-mu)) < 1e-12


def test_temporal_eigenvalue_with_reference():
    rng = np.random.default_rng(28)
    u0 = random_unitary(2, rng)
    obs = TwoTimeObservable("z", 2, u0=u0)
    assert abs(temporal_eigenvalue(obs, u0 @ X) + 1.0) < 1e-12


def test_commutator_norm_is_zero():
    # the two induced conjugations share the eigenoperator family
    # {u0 Z^mu X^nu}, so the matrix-level commutator vanishes identically
    assert observable_commutator_norm(
        TwoTimeObservable("z", 2), TwoTimeObservable("x", 2)) < 1e-12
    assert observable_commutator_norm(
        TwoTimeObservable("z", 3), TwoTimeObservable("x", 3)) < 1e-12
    rng = np.random.default_rng(29)
    u0 = random_unitary(2, rng)
    assert observable_commutator_norm(
        TwoTimeObservable("z", 2, u0=u0),
        TwoTimeObservable("x", 2, u0=u0)) < 1e-12


def test_generators_do_not_commute():
    obs_z = TwoTimeObservable("z", 2)
    obs_x = TwoTimeObservable("x", 2)
    gz, gx = obs_z.generator(), obs_x.generator()
    assert np.abs(gz @ gx - gx @ gz).max() > 1.0


def test_pure_state_norm_check():
    with pytest.raises(ValueError):
        PureState(np.array([1.0, 1.0], dtype=complex))


def test_outcome_distribution_shots_property():
    d = OutcomeDistribution(("a", "b"), np.array([0.5, 0.5]))
    assert d.shots == 0
