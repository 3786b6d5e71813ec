import numpy as np
import pytest

from evometry import (
    ExpansionCoefficients,
    clock_shift,
    expand,
    gram,
    pauli_basis,
    pauli_string,
    reconstruct,
    rotate_basis,
    weyl_basis,
)
from evometry.gates import CNOT, H, I2, X, Y, Z
from evometry.linalg import dag, random_unitary


def test_pauli_basis_single_qubit_elements():
    b = pauli_basis(dim=2)
    assert b.labels == ("I", "X", "Y", "Z")
    for el, ref in zip(b.elements, (I2, X, Y, Z)):
        assert np.abs(el - ref).max() < 1e-14


def test_pauli_basis_gram_is_orthogonal():
    for dim in (2, 4, 8):
        b = pauli_basis(dim=dim)
        g = gram(b.elements)
        assert np.abs(g - dim * np.eye(dim * dim)).max() < 1e-10


def test_pauli_string_matches_kron():
    s = pauli_string((3, 1))
    assert np.abs(s - np.kron(Z, X)).max() < 1e-14


def test_weyl_relations_d3():
    """Clock and shift satisfy ZX = zeta XZ and Z^3 = X^3 = 1."""
    z, x = clock_shift(3)
    zeta = np.exp(2j * np.pi / 3)
    assert np.abs(z.matrix @ x.matrix - zeta * x.matrix @ z.matrix).max() < 1e-12
    assert np.abs(np.linalg.matrix_power(z.matrix, 3) - np.eye(3)).max() < 1e-12
    assert np.abs(np.linalg.matrix_power(x.matrix, 3) - np.eye(3)).max() < 1e-12


def test_weyl_basis_gram_is_orthogonal():
    for dim in (2, 3, 5):
        b = weyl_basis(dim)
        g = gram(b.elements)
        assert np.abs(g - dim * np.eye(dim * dim)).max() < 1e-10


def test_weyl_d2_reduces_to_paulis():
    # ZX = i sigma_y at d = 2, so the four elements are I, X, Z, iY
    b = weyl_basis(2)
    assert np.abs(b.elements[0] - I2).max() < 1e-14
    assert np.abs(b.elements[1] - X).max() < 1e-14
    assert np.abs(b.elements[2] - Z).max() < 1e-14
    assert np.abs(b.elements[3] - 1j * Y).max() < 1e-14


def test_expand_reconstruct_round_trip():
    rng = np.random.default_rng(11)
    for _ in range(20):
        u = random_unitary(4, rng)
        c = expand(u, pauli_basis(dim=4))
        back = reconstruct(c, pauli_basis(dim=4))
        assert np.abs(back - u).max() < 1e-10


def test_expand_reconstruct_round_trip_weyl():
    rng = np.random.default_rng(12)
    b = weyl_basis(3)
    for _ in range(20):
        u = random_unitary(3, rng)
        back = reconstruct(expand(u, b), b)
        assert np.abs(back - u).max() < 1e-10


def test_unitary_expansion_probabilities_sum_to_one():
    rng = np.random.default_rng(13)
    for _ in range(10):
        u = random_unitary(2, rng)
        c = expand(u, pauli_basis(dim=2))
        assert abs(c.probabilities().sum() - 1.0) < 1e-12
        assert abs(c.weight() - 1.0) < 1e-12


def test_basis_element_expands_to_delta():
    b = pauli_basis(dim=2)
    c = expand(Y, b)
    expect = np.zeros(4)
    expect[2] = 1.0
    assert np.abs(c.probabilities() - expect).max() < 1e-12


def test_rotated_basis_keeps_orthogonality():
    # the rotation mixes the four labels, so it lives on a 4-dim space
    rng = np.random.default_rng(14)
    b = pauli_basis(dim=2)
    for _ in range(10):
        k = random_unitary(4, rng)
        rb = rotate_basis(b, k)
        assert np.abs(gram(rb.elements) - 2 * np.eye(4)).max() < 1e-10


def test_rotation_composition_order():
    """rotate(rotate(B, k1), k2) applies k2 after k1, i.e. k2 @ k1."""
    rng = np.random.default_rng(15)
    b = pauli_basis(dim=2)
    k1 = random_unitary(4, rng)
    k2 = random_unitary(4, rng)
    twice = rotate_basis(rotate_basis(b, k1), k2)
    once = rotate_basis(b, k2 @ k1)
    for a, c in zip(twice.elements, once.elements):
        assert np.abs(a - c).max() < 1e-12


def test_prefaced_basis_absorbs_reference():
    # expanding u0 s in the u0-prefaced basis gives the same coefficients
    # as expanding s in the plain one
    rng = np.random.default_rng(16)
    u0 = random_unitary(2, rng)
    plain = pauli_basis(dim=2)
    prefaced = pauli_basis(u0=u0, dim=2)
    s = random_unitary(2, rng)
    c_plain = expand(s, plain)
    c_pref = expand(u0 @ s, prefaced)
    assert np.abs(c_plain.coeffs - c_pref.coeffs).max() < 1e-10


def test_expand_rejects_wrong_shape():
    with pytest.raises(ValueError):
        expand(np.eye(3), pauli_basis(dim=2))


def test_expansion_coefficients_validation():
    with pytest.raises(ValueError):
        ExpansionCoefficients(2, np.zeros(3, dtype=complex))


def test_gram_of_cnot_family():
    ops = [np.eye(4), CNOT]
    g = gram(ops)
    assert abs(g[0, 0] - 4.0) < 1e-12
    assert abs(g[0, 1] - 2.0) < 1e-12  # tr(CNOT) = 2, not orthogonal to 1


def test_weyl_element_order_is_mu_nu_lexicographic():
    d = 3
    z, x = clock_shift(d)
    b = weyl_basis(d)
    for mu in range(d):
        for nu in range(d):
            ref = (np.linalg.matrix_power(z.matrix, mu)
                   @ np.linalg.matrix_power(x.matrix, nu))
            assert np.abs(b.elements[mu * d + nu] - ref).max() < 1e-12


def test_constructor_misuse_gets_a_pointed_error():
    # an int in the u0 slot is the classic mixup with weyl_basis
    with pytest.raises(ValueError, match="pauli_basis\\(dim="):
        pauli_basis(4)
    with pytest.raises(ValueError, match="integer"):
        weyl_basis(np.eye(3))
