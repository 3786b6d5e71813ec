#!/usr/bin/env python3
"""Example: how entangling a two-party gate is, in bits."""

import numpy as np

from evometry import (
    concentrate,
    entropy,
    induced_local_map,
    interaction_entanglement,
    operator_schmidt,
)
from evometry.gates import CNOT, H, SWAP, X


def main():
    # Step 1: expand a gate over local operator pairs and read off its
    # Schmidt weights. CNOT carries 1 bit, SWAP the maximal 2 bits, and
    # a product gate none.
    for name, u in (("CNOT", CNOT), ("SWAP", SWAP), ("H (x) X", np.kron(H, X))):
        s = operator_schmidt(u)
        print(f"{name}: values {np.round(np.asarray(s.values), 4).tolist()}, "
              f"S_U = {interaction_entanglement(u):.4f} bits")

    # Step 2: the same number shows up operationally, as the entropy of
    # the channel one side sees when the other is maximally mixed.
    m = induced_local_map(CNOT, other_state="maximally_mixed")
    print(f"CNOT induced-map entropy: {entropy(m):.6f} bits")
    if abs(entropy(m) - interaction_entanglement(CNOT)) > 1e-9:
        raise AssertionError("induced map entropy disagrees with S_U")

    # Step 3: on n copies of a partial interaction alpha 1 + beta XX, a
    # collective readout concentrates the evolution onto one sector of
    # C(n, k) equally weighted terms. The sector sizes follow the
    # binomial law in |alpha|^2.
    dist = concentrate(4, np.sqrt(0.75), mode="exact-matrix")
    print("4-copy sector probabilities:",
          np.round(dist.probabilities, 5).tolist())
    print(f"exact-matrix deviation from the binomial law: "
          f"{dist.sector_deviation:.2e}")
    for n in (8, 16, 32):
        d = concentrate(n, np.sqrt(0.75))
        k = int(np.argmax(d.probabilities))
        print(f"  n = {n:2d}: most likely sector k = {k}, "
              f"{d.records[k].term_count} equally weighted terms, "
              f"yield {d.yield_bits() / n:.4f} bits/copy")


if __name__ == "__main__":
    main()
