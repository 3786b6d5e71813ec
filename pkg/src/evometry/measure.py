"""Two-time measurement circuits that identify which evolution occurred.

The measured quantity is a temporal correlation: couple ancillas to the
system before an unknown evolution U acts, couple them again afterwards,
then read the ancillas out. For a basis {U_0 s_a} built from a reference
unitary U_0 and mutually orthogonal unitaries s_a, every basis element is
an eigenoperator of the correlation, so the readout projects the
evolution itself onto one element: outcome a occurs with probability
|C_a|^2 where U = sum_a C_a U_0 s_a, and the system collapses to
U_0 s_a |psi> regardless of what |psi> was.

Circuit layout used here, per clock/shift pair (Z, X) on a d-level site:
two d-level ancillas start in uniform superpositions. At t1 a
controlled-power coupling applies Z^beta then X^alpha to the site
(beta, alpha being the ancilla levels). After the evolution, the inverse
couplings, conjugated by U_0, are applied. The first ancilla then holds
the Fourier vector sum_alpha zeta^{alpha mu}|alpha> and the second
sum_beta zeta^{-beta nu}|beta> whenever the evolution was U_0 Z^mu X^nu,
so a Fourier-basis readout reveals (mu, nu). Applying the couplings
inverted at t2 (an echo) is what makes the end states exact products; at
d = 2 the inversion only reorders the two self-inverse couplings, which
is the same circuit up to a known controlled phase between the ancillas
that the +/- readout basis absorbs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .basis import OperatorBasis, UnitaryOperator, clock_shift, expand, pauli_string
from .linalg import as_matrix, dag, max_entangled

PRODUCT_FORM_ATOL = 1e-9
EIGEN_RTOL = 1e-9
NORM_ATOL = 1e-12


class NotAnEigenoperator(Exception):
    """Raised when an operator fails the eigenvalue relation of a
    two-time observable."""


@dataclass(frozen=True)
class PureState:
    """A unit vector; tolerance on the norm is 1e-12."""

    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex).ravel()
        n = np.linalg.norm(v)
        if abs(n - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {n} is not 1 within {NORM_ATOL}")
        object.__setattr__(self, "amplitudes", v)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class TwoTimeObservable:
    """A correlation [u0 g u0^dag at t2][g at t1] with generator g.

    family selects the generator: "z" for the clock operator (sigma_z at
    d = 2) and "x" for the shift operator (sigma_x at d = 2).
    """

    family: str
    dim: int
    u0: np.ndarray | None = None

    def __post_init__(self):
        if self.family not in ("z", "x"):
            raise ValueError("family must be 'z' or 'x'")
        if self.u0 is not None:
            object.__setattr__(
                self, "u0", UnitaryOperator(as_matrix(self.u0)).matrix
            )

    def generator(self) -> np.ndarray:
        z, x = clock_shift(self.dim)
        return z.matrix if self.family == "z" else x.matrix

    def reference(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex) if self.u0 is None else self.u0


@dataclass(frozen=True)
class WhichUnitaryResult:
    """One measurement branch: outcome index, collapsed state, exact
    probability of that branch."""

    outcome: int
    collapsed: PureState
    exact_prob: float


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact outcome probabilities, optionally with sampled counts."""

    labels: tuple
    probabilities: np.ndarray
    counts: np.ndarray | None = None
    shot_outcomes: np.ndarray | None = None
    seed: int | None = None

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        object.__setattr__(self, "probabilities", p)

    @property
    def shots(self) -> int:
        return 0 if self.counts is None else int(self.counts.sum())


def temporal_eigenvalue(obs: TwoTimeObservable, u) -> complex:
    """Eigenvalue of u under the two-time correlation, if it has one.

    The correlation pairs the generator at t2 with its inverse at t1,
    acting on an operator as M = (u0 g u0^dag) u g^dag; the t1 factor
    is the one the echo circuit undoes. For d = 2 the generators are
    self-inverse, so this is the familiar sandwich (u0 g u0^dag) u g.
    When M = lambda u within a relative tolerance of 1e-9 the
    eigenvalue lambda is returned (a sign for the d = 2 families, a
    power of exp(2 pi i / d) for clock/shift bases); otherwise
    NotAnEigenoperator is raised.
    """
    um = UnitaryOperator(as_matrix(u)).matrix
    if um.shape[0] != obs.dim:
        raise ValueError("operator dimension does not match observable")
    ref = obs.reference()
    g = obs.generator()
    m = ref @ g @ dag(ref) @ um @ dag(g)
    lam = np.trace(dag(um) @ m) / obs.dim
    resid = np.linalg.norm(m - lam * um)
    if resid > EIGEN_RTOL * max(1.0, np.linalg.norm(m)):
        raise NotAnEigenoperator(
            f"residual {resid:.3e} exceeds relative tolerance {EIGEN_RTOL}"
        )
    return complex(lam)


def observable_commutator_norm(
    obs1: TwoTimeObservable, obs2: TwoTimeObservable
) -> float:
    """Frobenius norm of the commutator of the two induced maps.

    Each observable acts on operators as L(U) = (u0 g u0^dag) U g,
    represented by the d^2 x d^2 matrix (u0 g u0^dag) kron g^T. Note
    that for generators from the same clock/shift pair these maps share
    the common eigenoperator basis {u0 Z^mu X^nu} and therefore commute
    exactly: the norm is 0 for the z/x pair at any d and any u0. That
    shared eigenbasis is precisely what lets one readout identify every
    basis element even though the generators themselves do not commute
    as matrices.
    """
    if obs1.dim != obs2.dim:
        raise ValueError("observables act on different dimensions")
    r1, r2 = obs1.reference(), obs2.reference()
    if np.abs(r1 - r2).max() > PRODUCT_FORM_ATOL:
        raise ValueError("observables must share the same reference u0")
    l1 = np.kron(r1 @ obs1.generator() @ dag(r1), obs1.generator().T)
    l2 = np.kron(r2 @ obs2.generator() @ dag(r2), obs2.generator().T)
    return float(np.linalg.norm(l1 @ l2 - l2 @ l1))


def which_unitary_distribution(u, basis: OperatorBasis) -> OutcomeDistribution:
    """Exact outcome law |C_a|^2 for measuring which basis element acted."""
    coeffs = expand(u, basis)
    return OutcomeDistribution(basis.labels, coeffs.probabilities())


# ---------------------------------------------------------------------------
# circuit engine


def _site_couplings(site_dims):
    """Per-site powers of the clock/shift pair, embedded later by kron."""
    pairs = []
    for q in site_dims:
        z, x = clock_shift(q)
        zp = [np.linalg.matrix_power(z.matrix, m) for m in range(q)]
        xp = [np.linalg.matrix_power(x.matrix, m) for m in range(q)]
        pairs.append((zp, xp))
    return pairs


def _embed(ops, dims, bystander_dim):
    """kron together per-site operators plus an identity bystander."""
    out = ops[0]
    for o in ops[1:]:
        out = np.kron(out, o)
    if bystander_dim > 1:
        out = np.kron(out, np.eye(bystander_dim))
    return out


def _circuit_rows(u, u0, site_dims, psi, bystander_dim):
    """Run the echo circuit; return per-outcome unnormalized system rows.

    Outcomes are indexed by per-site pairs (mu_j, nu_j) in the same
    mixed-radix order as ancilla configurations. Row norms squared are
    the outcome probabilities; normalized rows are the collapsed states.
    """
    pairs = _site_couplings(site_dims)
    configs = list(
        itertools.product(*[
            itertools.product(range(q), range(q)) for q in site_dims
        ])
    )
    n_cfg = len(configs)
    dim_full = psi.size

    u_full = u if bystander_dim == 1 else np.kron(u, np.eye(bystander_dim))
    u0_full = u0 if bystander_dim == 1 else np.kron(u0, np.eye(bystander_dim))

    joint = np.empty((n_cfg, dim_full), dtype=complex)
    for idx, cfg in enumerate(configs):
        # t1 coupling: per site, Z^beta then X^alpha
        s1 = _embed(
            [pairs[j][1][a] @ pairs[j][0][b] for j, (a, b) in enumerate(cfg)],
            site_dims,
            bystander_dim,
        )
        row = s1 @ psi
        row = u_full @ row
        # t2: the inverse coupling, conjugated by the reference unitary
        row = u0_full @ dag(s1) @ dag(u0_full) @ row
        joint[idx] = row / np.sqrt(n_cfg)

    # Fourier readout per site: first ancilla with kernel zeta^{+mu alpha},
    # second with zeta^{-nu beta}
    kernels = []
    for q in site_dims:
        zeta = np.exp(2j * np.pi / q)
        f = zeta ** np.outer(np.arange(q), np.arange(q)) / np.sqrt(q)
        g = zeta ** (-np.outer(np.arange(q), np.arange(q))) / np.sqrt(q)
        kernels.append((f, g))
    meas = np.empty((n_cfg, n_cfg), dtype=complex)
    for o_idx, out_cfg in enumerate(configs):
        for c_idx, cfg in enumerate(configs):
            amp = 1.0 + 0j
            for j, ((mu, nu), (a, b)) in enumerate(zip(out_cfg, cfg)):
                amp *= kernels[j][0][mu, a] * kernels[j][1][nu, b]
            meas[o_idx, c_idx] = amp
    rows = meas.conj() @ joint
    return configs, rows


def _check_product_form(basis, expected_sigma):
    ref = (
        np.eye(basis.dim, dtype=complex)
        if basis.u0 is None
        else basis.u0.matrix
    )
    for a, sig in enumerate(expected_sigma):
        if np.abs(basis.elements[a] - ref @ sig).max() > PRODUCT_FORM_ATOL:
            raise ValueError(
                "basis is not of the product form {u0 s_a} this circuit "
                f"measures (element {a} deviates)"
            )
    return ref


def _finish(labels, probs, collapsed_rows, shots, seed):
    probs = np.asarray(probs)
    results = []
    counts = None
    shot_outcomes = None
    if shots:
        if seed is None:
            raise ValueError("seed is required when shots > 0")
        rng = np.random.default_rng(seed)
        shot_outcomes = rng.choice(probs.size, size=shots, p=probs / probs.sum())
        counts = np.bincount(shot_outcomes, minlength=probs.size)
        observed = np.flatnonzero(counts)
    else:
        observed = np.flatnonzero(probs > 1e-14)
    for a in observed:
        row = collapsed_rows[a]
        results.append(
            WhichUnitaryResult(
                outcome=int(a),
                collapsed=PureState(row / np.linalg.norm(row)),
                exact_prob=float(probs[a]),
            )
        )
    dist = OutcomeDistribution(
        labels, probs, counts=counts, shot_outcomes=shot_outcomes, seed=seed
    )
    return dist, results


def _run_product_measurement(u, basis, psi, shots, seed, site_dims, index_of):
    um = UnitaryOperator(as_matrix(u)).matrix
    if um.shape[0] != basis.dim:
        raise ValueError("unitary dimension does not match basis")
    psi = np.asarray(getattr(psi, "amplitudes", psi), dtype=complex).ravel()
    if psi.size % basis.dim != 0:
        raise ValueError(
            f"state dim {psi.size} is not a multiple of basis dim {basis.dim}"
        )
    bystander = psi.size // basis.dim
    psi = PureState(psi).amplitudes
    ref = (
        np.eye(basis.dim, dtype=complex)
        if basis.u0 is None
        else basis.u0.matrix
    )
    configs, rows = _circuit_rows(um, ref, site_dims, psi, bystander)
    d2 = basis.dim ** 2
    probs = np.zeros(d2)
    collapsed = [None] * d2
    for c_idx, cfg in enumerate(configs):
        a = index_of(cfg)
        probs[a] = np.linalg.norm(rows[c_idx]) ** 2
        collapsed[a] = rows[c_idx]
    return _finish(basis.labels, probs, collapsed, shots, seed)


# outcome pair (mu, nu) of one qubit site against the I, X, Y, Z ordering;
# Y appears at (1, 1) because Z X = i sigma_y
_PAIR_TO_PAULI = {(0, 0): 0, (0, 1): 1, (1, 1): 2, (1, 0): 3}


def measure_which_unitary(u, basis: OperatorBasis, psi, shots: int = 0,
                          seed: int | None = None):
    """Simulate the two-ancilla-per-qubit circuit for a Pauli-form basis.

    Requires basis elements u0 s_a with s_a the tensor-product Pauli
    strings (the pauli_basis ordering). psi may live on C^d or carry an
    extra untouched tensor factor, in which case the factor rides along
    and stays entangled exactly as it was.

    Returns (OutcomeDistribution, results) where results holds one
    WhichUnitaryResult per outcome that occurred (all outcomes of
    nonzero probability when shots == 0): repeated shots that land on
    the same outcome share the same collapsed state, so the per-shot
    record lives in the distribution's shot_outcomes.
    """
    n = basis.dim.bit_length() - 1
    if 2 ** n != basis.dim:
        raise ValueError("Pauli-form measurement needs dim = 2^n")
    sigmas = [
        pauli_string(letters)
        for letters in itertools.product(range(4), repeat=n)
    ]
    _check_product_form(basis, sigmas)

    def index_of(cfg):
        a = 0
        for (mu, nu) in cfg:
            a = 4 * a + _PAIR_TO_PAULI[(mu, nu)]
        return a

    return _run_product_measurement(
        u, basis, psi, shots, seed, [2] * n, index_of
    )


def measure_which_unitary_qudit(u, basis: OperatorBasis, psi,
                                shots: int = 0, seed: int | None = None):
    """Simulate the two-qudit-ancilla circuit for a clock/shift basis.

    Requires basis elements u0 Z^mu X^nu in weyl_basis ordering. The
    ancilla end state for element (mu, nu) is the product of the two
    Fourier vectors with kernels zeta^{alpha mu} and zeta^{-beta nu}.
    """
    d = basis.dim
    z, x = clock_shift(d)
    zp = [np.linalg.matrix_power(z.matrix, m) for m in range(d)]
    xp = [np.linalg.matrix_power(x.matrix, m) for m in range(d)]
    sigmas = [zp[mu] @ xp[nu] for mu in range(d) for nu in range(d)]
    _check_product_form(basis, sigmas)

    def index_of(cfg):
        (mu, nu), = cfg
        return mu * d + nu

    return _run_product_measurement(u, basis, psi, shots, seed, [d], index_of)


def circuit_end_state(u, basis: OperatorBasis, psi) -> np.ndarray:
    """Joint (ancilla configs x system) array after the echo circuit.

    Row c of the result is the unnormalized system vector paired with
    ancilla computational configuration c; summing |row|^2 gives 1.
    Exposed for inspection of the ancilla end states.
    """
    um = UnitaryOperator(as_matrix(u)).matrix
    d = basis.dim
    z, x = clock_shift(d)
    zp = [np.linalg.matrix_power(z.matrix, m) for m in range(d)]
    xp = [np.linalg.matrix_power(x.matrix, m) for m in range(d)]
    _check_product_form(basis, [zp[m] @ xp[n] for m in range(d) for n in range(d)])
    psi = PureState(np.asarray(psi, dtype=complex)).amplitudes
    ref = np.eye(d, dtype=complex) if basis.u0 is None else basis.u0.matrix
    pairs = _site_couplings([d])
    configs = list(itertools.product(range(d), range(d)))
    joint = np.empty((len(configs), d), dtype=complex)
    for idx, (a, b) in enumerate(configs):
        s1 = pairs[0][1][a] @ pairs[0][0][b]
        joint[idx] = (ref @ dag(s1) @ dag(ref) @ um @ s1 @ psi) / d
    return joint


def measure_choi_side(op, basis: OperatorBasis, shots: int = 0,
                      seed: int | None = None):
    """Which-element measurement through the channel-state picture.

    The operator acts on one half of a maximally entangled pair and the
    pair is measured projectively in the orthonormal family
    (B_a (x) 1)|phi+>. This backend handles any trace-orthogonal basis,
    including rotated ones whose elements are no longer unitary, at the
    cost of consuming the entangled pair instead of preserving an
    arbitrary input state. Collapsed states are the post-measurement
    pair states.
    """
    m = as_matrix(op)
    d = basis.dim
    if m.shape != (d, d):
        raise ValueError("operator dimension does not match basis")
    phi = max_entangled(d)
    final = np.kron(m, np.eye(d)) @ phi
    vectors = [np.kron(b, np.eye(d)) @ phi for b in basis.elements]
    amps = np.array([np.vdot(v, final) for v in vectors])
    probs = np.abs(amps) ** 2
    return _finish(basis.labels, probs, vectors, shots, seed)
