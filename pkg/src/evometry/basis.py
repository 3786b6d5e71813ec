"""Orthogonal operator bases and expansion of evolutions over them.

A basis here is a family of d^2 operators B_0 .. B_{d^2-1} on C^d that are
orthogonal in the trace inner product, tr(B_a^dag B_b) = d delta_ab, with the
distinguished element B_0 playing the role of the reference evolution U_0.
Any operator U on C^d expands as U = sum_a C_a B_a with
C_a = (1/d) tr(B_a^dag U), and for unitary U the weights |C_a|^2 form a
probability distribution over the basis elements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import gates
from .linalg import as_matrix, dag, is_unitary

ATOL = 1e-10


@dataclass(frozen=True)
class UnitaryOperator:
    """A validated unitary matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if not is_unitary(m, ATOL):
            dev = np.abs(dag(m) @ m - np.eye(m.shape[0])).max()
            raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BasisRotation:
    """A unitary acting on basis labels, i.e. a D x D matrix with D = d^2."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if not is_unitary(m, ATOL):
            raise ValueError("basis rotation must be unitary")
        object.__setattr__(self, "matrix", m)

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients C_a of an operator over an orthogonal basis."""

    dim: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.size != self.dim * self.dim:
            raise ValueError(
                f"expected {self.dim ** 2} coefficients, got {c.size}"
            )
        object.__setattr__(self, "coeffs", c)

    def probabilities(self) -> np.ndarray:
        """|C_a|^2 for every basis element."""
        return np.abs(self.coeffs) ** 2

    def weight(self) -> float:
        """Total weight sum_a |C_a|^2 (1 for a unitary operator)."""
        return float(self.probabilities().sum())


@dataclass(frozen=True)
class OperatorBasis:
    """d^2 trace-orthogonal operators on C^d, reference element first.

    elements[0] is u0 itself whenever a reference unitary was supplied.
    is_unitary records whether every element is unitary, which is what
    makes the which-element measurement a measurement over unitaries.
    """

    dim: int
    elements: tuple
    labels: tuple
    u0: UnitaryOperator | None = None
    is_unitary: bool = True

    def __post_init__(self):
        els = tuple(np.asarray(e, dtype=complex) for e in self.elements)
        if len(els) != self.dim ** 2:
            raise ValueError(
                f"need {self.dim ** 2} elements for dim {self.dim}, "
                f"got {len(els)}"
            )
        if len(self.labels) != len(els):
            raise ValueError("one label per element required")
        g = gram(els)
        dev = np.abs(g - self.dim * np.eye(len(els))).max()
        if dev > ATOL:
            raise ValueError(
                f"elements are not trace-orthogonal (deviation {dev:.3e})"
            )
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "labels", tuple(self.labels))

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, a: int) -> np.ndarray:
        return self.elements[a]


def gram(elements) -> np.ndarray:
    """Trace-inner-product Gram matrix tr(B_a^dag B_b)."""
    n = len(elements)
    g = np.empty((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            g[a, b] = np.trace(dag(elements[a]) @ elements[b])
    return g


def _n_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim <= 0 or 2 ** n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def pauli_string(letters: tuple[int, ...]) -> np.ndarray:
    """Tensor product of single-qubit basis operators, indexed 0..3."""
    out = gates.PAULIS[letters[0]]
    for l in letters[1:]:
        out = np.kron(out, gates.PAULIS[l])
    return out


def pauli_basis(u0=None, dim: int = 2) -> OperatorBasis:
    """Basis {u0 s_a} from tensor products of the single-qubit operators.

    Ordering is lexicographic in (I, X, Y, Z) per qubit with the identity
    string first, so elements[0] == u0. Without u0 the reference is the
    identity.

    Parameters
    ----------
    u0 : optional reference unitary (matrix or UnitaryOperator); its
        dimension, which must be a power of two, overrides dim.
    dim : dimension used when u0 is omitted.
    """
    if u0 is not None:
        if not isinstance(u0, UnitaryOperator):
            if np.ndim(u0) == 0:
                raise ValueError("u0 must be a matrix; pass the dimension "
                                 "by keyword, pauli_basis(dim=...)")
            u0 = UnitaryOperator(u0)
        dim = u0.dim
    n = _n_qubits(dim)
    ref = np.eye(dim, dtype=complex) if u0 is None else u0.matrix
    elements = []
    labels = []
    for letters in itertools.product(range(4), repeat=n):
        elements.append(ref @ pauli_string(letters))
        labels.append("".join(gates.PAULI_LABELS[l] for l in letters))
    return OperatorBasis(dim, tuple(elements), tuple(labels), u0=u0)


def clock_shift(dim: int) -> tuple[UnitaryOperator, UnitaryOperator]:
    """The clock and shift pair (Z, X) on C^d.

    Z = sum_j zeta^j |j><j| and X = sum_j |j+1 mod d><j| with
    zeta = exp(2 pi i / d). They satisfy Z^d = X^d = 1 and the commutation
    rule Z X = zeta X Z; at d = 2 they are exactly the z and x Pauli
    matrices.
    """
    if dim < 2:
        raise ValueError("clock/shift pair needs dimension >= 2")
    zeta = np.exp(2j * np.pi / dim)
    z = np.diag(zeta ** np.arange(dim))
    x = np.zeros((dim, dim), dtype=complex)
    for j in range(dim):
        x[(j + 1) % dim, j] = 1.0
    return UnitaryOperator(z), UnitaryOperator(x)


def weyl_basis(dim: int, u0=None) -> OperatorBasis:
    """Basis {u0 Z^mu X^nu} ordered lexicographically by (mu, nu).

    No phase correction is applied to the products: at d = 2 the element
    Z X equals i sigma_y, so the d = 2 Weyl basis is (I, X, Z, iY), which
    matches the Pauli basis up to ordering and that single phase.
    """
    if np.ndim(dim) != 0:
        raise ValueError("dim must be an integer; the reference unitary "
                         "goes second, weyl_basis(d, u0)")
    z, x = clock_shift(dim)
    if u0 is not None:
        u0 = u0 if isinstance(u0, UnitaryOperator) else UnitaryOperator(u0)
        if u0.dim != dim:
            raise ValueError(f"u0 has dim {u0.dim}, expected {dim}")
    ref = np.eye(dim, dtype=complex) if u0 is None else u0.matrix
    zp = [np.linalg.matrix_power(z.matrix, m) for m in range(dim)]
    xp = [np.linalg.matrix_power(x.matrix, m) for m in range(dim)]
    elements = []
    labels = []
    for mu in range(dim):
        for nu in range(dim):
            elements.append(ref @ zp[mu] @ xp[nu])
            labels.append(f"Z^{mu}X^{nu}")
    return OperatorBasis(dim, tuple(elements), tuple(labels), u0=u0)


def expand(op, basis: OperatorBasis) -> ExpansionCoefficients:
    """Coefficients C_a = (1/d) tr(B_a^dag op) of op over the basis.

    op may be any d x d matrix; sum_a |C_a|^2 equals the squared
    Frobenius norm of op divided by d, which is 1 exactly when op is
    unitary.
    """
    m = as_matrix(op)
    if m.shape != (basis.dim, basis.dim):
        raise ValueError(
            f"operator shape {m.shape} does not match basis dim {basis.dim}"
        )
    coeffs = np.array(
        [np.trace(dag(b) @ m) / basis.dim for b in basis.elements]
    )
    return ExpansionCoefficients(basis.dim, coeffs)


def reconstruct(coeffs: ExpansionCoefficients, basis: OperatorBasis) -> np.ndarray:
    """Rebuild sum_a C_a B_a from coefficients; inverse of expand."""
    if coeffs.dim != basis.dim:
        raise ValueError("coefficient and basis dimensions differ")
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    for c, b in zip(coeffs.coeffs, basis.elements):
        out += c * b
    return out


def rotate_basis(basis: OperatorBasis, k) -> OperatorBasis:
    """New basis A_m = sum_n K_mn B_n for a unitary K on the label space.

    Trace orthogonality is preserved for any unitary K, but the rotated
    elements are in general no longer unitary matrices; the is_unitary
    flag of the result is recomputed. Composition order:
    rotate_basis(rotate_basis(B, k1), k2) == rotate_basis(B, k2 @ k1).
    """
    k = k if isinstance(k, BasisRotation) else BasisRotation(k)
    if k.order != basis.dim ** 2:
        raise ValueError(
            f"rotation order {k.order} does not match basis size "
            f"{basis.dim ** 2}"
        )
    elements = []
    for m in range(k.order):
        a = np.zeros((basis.dim, basis.dim), dtype=complex)
        for n in range(k.order):
            a += k.matrix[m, n] * basis.elements[n]
        elements.append(a)
    unitary = all(is_unitary(e, ATOL) for e in elements)
    labels = tuple(f"R{m}" for m in range(k.order))
    return OperatorBasis(
        basis.dim, tuple(elements), labels, u0=None, is_unitary=unitary
    )
