#!/usr/bin/env python3
"""Example: storing an operator in a state and spending it later."""

import numpy as np

from evometry import (
    EvolutionSequence,
    KrausMap,
    PureState,
    kraus_from_ancilla_basis,
    retrieval_statistics,
    stinespring,
    stored_state,
    storage_overlap,
    verify_sequence,
)
from evometry.gates import I2, X


def main():
    # Step 1: an operator becomes a state by acting on half of a
    # maximally entangled pair. Orthogonal unitaries give orthogonal
    # records, so the record is a faithful quantum memory.
    print("overlap of stored 1 and stored X:",
          abs(storage_overlap(I2, X)))
    print("stored state of 1:", np.round(stored_state(I2), 4).tolist())

    # Step 2: retrieval is probabilistic. A stored phase gate spreads
    # over two canonical elements, so pushing it onto a fresh state
    # heralds success half the time; when the herald fires the output
    # is exactly the gate applied.
    s = np.diag([1.0, 1j])
    m = KrausMap((np.sqrt(0.5) * s, np.sqrt(0.5) * s.conj().T))
    psi = PureState(np.array([0.6, 0.8], dtype=complex))
    stats = retrieval_statistics(0, m, psi, trials=20_000, seed=11)
    print(f"herald rate: exact {stats['herald_probability']:.4f}, "
          f"observed {stats['empirical_rate']:.4f} over 20000 trials")
    print(f"conditioned output fidelity: {stats['success_fidelity']:.9f}")
    if abs(stats["success_fidelity"] - 1.0) > 1e-9:
        raise AssertionError("heralded output is not the stored operator")

    # Step 3: a claimed record of which element fired on each use can
    # be audited against fresh runs of the dilation. An honest record
    # passes; one flipped entry is caught.
    deph = KrausMap((np.sqrt(0.5) * I2,
                     np.sqrt(0.5) * np.diag([1.0, -1.0]).astype(complex)))
    dil = stinespring(deph)
    rep = kraus_from_ancilla_basis(dil)
    weights = np.array([0.5, 0.5])
    rng = np.random.default_rng(13)
    honest = tuple(int(i) for i in rng.choice(2, size=40, p=weights))
    record = verify_sequence(dil, None, EvolutionSequence(rep, honest), 13)
    print("honest record accepted:", record.accepted)
    corrupted = honest[:5] + (1 - honest[5],) + honest[6:]
    record = verify_sequence(dil, None, EvolutionSequence(rep, corrupted), 13)
    print("corrupted record accepted:", record.accepted)
    if record.accepted:
        raise AssertionError("a corrupted record slipped through")


if __name__ == "__main__":
    main()
