"""Probabilistic measurement and information content of quantum evolutions.

Expand a unitary over an orthogonal unitary basis and the squared
coefficients are outcome probabilities of an actual two-time
measurement; the same lens turns channels into canonical operator
records with an entropy, storable, compressible, verifiable, and
retrievable states, and gives bipartite interactions a Schmidt
structure with an entanglement measure and a concentration protocol.
"""

from .basis import (
    BasisRotation,
    ExpansionCoefficients,
    OperatorBasis,
    UnitaryOperator,
    clock_shift,
    expand,
    gram,
    pauli_basis,
    pauli_string,
    reconstruct,
    rotate_basis,
    weyl_basis,
)
from .channels import (
    CanonicalKraus,
    ChoiState,
    KrausMap,
    StinespringDilation,
    canonical_kraus,
    choi,
    entropy,
    equivalent,
    kraus_from_ancilla_basis,
    kraus_rotation,
    named_channel,
    stinespring,
)
from .interaction import (
    BipartiteUnitary,
    ConcentrationDistribution,
    ConcentrationRecord,
    OperatorSchmidt,
    bipartite_expand,
    concentrate,
    concentration_sectors,
    concentration_yield,
    expected_term_count,
    induced_local_map,
    interaction_entanglement,
    operator_schmidt,
)
from .measure import (
    NotAnEigenoperator,
    OutcomeDistribution,
    PureState,
    TwoTimeObservable,
    WhichUnitaryResult,
    circuit_end_state,
    measure_choi_side,
    measure_which_unitary,
    measure_which_unitary_qudit,
    observable_commutator_norm,
    temporal_eigenvalue,
    which_unitary_distribution,
)
from .storage import (
    EvolutionSequence,
    RetrievalOutcome,
    StoredEvolution,
    TypicalCompression,
    VerificationRecord,
    compression_rate,
    probabilistic_retrieve,
    retrieval_statistics,
    store,
    stored_state,
    storage_overlap,
    typical_compress,
    verify_sequence,
)
from .superdense import (
    BellBasis,
    ChannelTranscript,
    bell_basis,
    eavesdropper_marginal,
    superdense_send,
)

__version__ = "0.1.0"

__all__ = [
    "BasisRotation",
    "BellBasis",
    "BipartiteUnitary",
    "CanonicalKraus",
    "ChannelTranscript",
    "ChoiState",
    "ConcentrationDistribution",
    "ConcentrationRecord",
    "EvolutionSequence",
    "ExpansionCoefficients",
    "KrausMap",
    "NotAnEigenoperator",
    "OperatorBasis",
    "OperatorSchmidt",
    "OutcomeDistribution",
    "PureState",
    "RetrievalOutcome",
    "StinespringDilation",
    "StoredEvolution",
    "TwoTimeObservable",
    "TypicalCompression",
    "UnitaryOperator",
    "VerificationRecord",
    "WhichUnitaryResult",
    "bell_basis",
    "bipartite_expand",
    "canonical_kraus",
    "choi",
    "circuit_end_state",
    "clock_shift",
    "compression_rate",
    "concentrate",
    "concentration_sectors",
    "concentration_yield",
    "eavesdropper_marginal",
    "entropy",
    "equivalent",
    "expand",
    "expected_term_count",
    "gram",
    "induced_local_map",
    "interaction_entanglement",
    "kraus_from_ancilla_basis",
    "kraus_rotation",
    "measure_choi_side",
    "measure_which_unitary",
    "measure_which_unitary_qudit",
    "named_channel",
    "observable_commutator_norm",
    "operator_schmidt",
    "pauli_basis",
    "pauli_string",
    "probabilistic_retrieve",
    "reconstruct",
    "retrieval_statistics",
    "rotate_basis",
    "stinespring",
    "store",
    "stored_state",
    "storage_overlap",
    "superdense_send",
    "temporal_eigenvalue",
    "typical_compress",
    "verify_sequence",
    "weyl_basis",
    "which_unitary_distribution",
]
