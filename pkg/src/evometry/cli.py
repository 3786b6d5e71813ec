"""Command line front end: reproducible experiments, JSON reports.

Every subcommand computes exact figures, optionally samples with a
mandatory seed, runs the owning module's invariant checks, and emits a
report that is byte-identical across runs with the same configuration.
Wall time goes to stderr so it never perturbs the report. Exit status: 0
when all checks pass, 1 when a check fails, 2 on input errors.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .basis import gram, pauli_basis, weyl_basis
from .channels import (
    canonical_kraus,
    choi,
    entropy,
    kraus_from_ancilla_basis,
    stinespring,
)
from .formats import json_report, load_map, load_state, load_unitary
from .interaction import concentrate, operator_schmidt
from .linalg import dag, partial_trace, shannon_entropy
from .measure import (
    PureState,
    measure_which_unitary,
    measure_which_unitary_qudit,
    which_unitary_distribution,
)
from .storage import (
    EvolutionSequence,
    compression_rate,
    retrieval_statistics,
    typical_compress,
    verify_sequence,
)
from .superdense import superdense_send

DEFAULT_TOL = 1e-9


def _basis_for(kind: str, dim: int):
    if kind == "pauli":
        return pauli_basis(dim=dim)
    if kind == "weyl":
        return weyl_basis(dim)
    raise ValueError(f"unknown basis kind {kind!r}")


def _floats(a):
    return [float(x) for x in np.asarray(a).ravel()]


def _ints(a):
    return [int(x) for x in np.asarray(a).ravel()]


def cmd_basis(args):
    basis = _basis_for(args.kind, args.dim)
    d = basis.dim
    dev = float(np.abs(gram(basis.elements) / d - np.eye(d * d)).max())
    report = {
        "command": "basis",
        "config": {"kind": args.kind, "dim": d, "seed": args.seed},
        "exact": {
            "labels": list(basis.labels),
            "element_count": len(basis),
            "gram_deviation": dev,
            "all_unitary": bool(basis.is_unitary),
        },
    }
    checks = {"orthogonality": dev <= args.tol}
    return report, checks


def cmd_measure(args):
    u = load_unitary(args.unitary)
    d = u.shape[0]
    u0 = load_unitary(args.u0) if args.u0 else None
    if args.basis == "pauli":
        basis = pauli_basis(u0=u0, dim=d)
    else:
        basis = weyl_basis(d, u0=u0)
    psi = PureState(load_state(args.state, d))
    exact = which_unitary_distribution(u, basis)
    runner = (
        measure_which_unitary if args.basis == "pauli"
        else measure_which_unitary_qudit
    )
    dist, results = runner(u, basis, psi, shots=args.shots, seed=args.seed)
    circuit_dev = float(
        np.abs(dist.probabilities - exact.probabilities).max()
    )
    total = float(dist.probabilities.sum())
    report = {
        "command": "measure",
        "config": {
            "unitary": args.unitary, "basis": args.basis, "u0": args.u0,
            "dim": d, "state": args.state, "shots": args.shots,
            "seed": args.seed,
        },
        "exact": {
            "labels": list(basis.labels),
            "probabilities": _floats(exact.probabilities),
        },
        "empirical": {
            "counts": _ints(dist.counts) if dist.counts is not None else None,
        },
        "circuit": {
            "probability_deviation": circuit_dev,
            "distinct_outcomes": len(results),
        },
    }
    checks = {
        "born_rule_circuit": circuit_dev <= args.tol,
        "normalized": abs(total - 1.0) <= args.tol,
    }
    return report, checks


def cmd_channel(args):
    m = load_map(args.map)
    canon = canonical_kraus(m)
    d = m.dim
    tp_dev = float(np.abs(
        sum(dag(k) @ k for k in m.operators) - np.eye(d)
    ).max())
    c = choi(m)
    acted = partial_trace(c.matrix, (d, d), keep=1)
    report = {
        "command": "channel",
        "config": {"map": args.map, "seed": args.seed},
        "exact": {
            "dim": d,
            "element_count": len(m),
            "canonical_probabilities": _floats(canon.probabilities),
            "entropy_bits": float(entropy(m)),
            "trace_preservation_deviation": tp_dev,
            "choi_trace_deviation": float(abs(np.trace(c.matrix) - 1.0)),
            "choi_acted_marginal_deviation": float(
                np.abs(acted - np.eye(d) / d).max()
            ),
        },
    }
    checks = {
        "trace_preserving": tp_dev <= args.tol,
        "canonical_normalized":
            abs(float(canon.probabilities.sum()) - 1.0) <= args.tol,
    }
    return report, checks


def cmd_compress(args):
    m = load_map(args.map)
    tc = typical_compress(m, args.n, args.delta)
    rate_target = compression_rate(m)
    report = {
        "command": "compress",
        "config": {
            "map": args.map, "n": args.n, "delta": args.delta,
            "seed": args.seed,
        },
        "exact": {
            "kept_dim": tc.kept_dim,
            "rate_bits_per_use": tc.rate,
            "infidelity_bound": tc.infidelity_bound,
            "entropy_bits": rate_target,
            "rate_deviation": abs(tc.rate - rate_target),
        },
    }
    checks = {
        "kept_nonempty": tc.kept_dim >= 1,
        "tail_in_range": 0.0 <= tc.infidelity_bound <= 1.0,
    }
    return report, checks


def cmd_retrieve(args):
    m = load_map(args.map)
    psi = PureState(load_state(args.state, m.dim))
    if args.trials > 0 and args.seed is None:
        raise ValueError("--seed is required when --trials > 0")
    stats = retrieval_statistics(args.op_index, m, psi, args.trials, args.seed)
    p = stats["herald_probability"]
    sigma = (
        (p * (1 - p) / args.trials) ** 0.5 if args.trials else 0.0
    )
    herald_ok = (
        args.trials == 0
        or abs(stats["empirical_rate"] - p) <= 5 * sigma + 1e-15
    )
    report = {
        "command": "retrieve",
        "config": {
            "map": args.map, "op_index": args.op_index, "state": args.state,
            "trials": args.trials, "seed": args.seed,
        },
        "exact": {
            "support_dim": stats["support_dim"],
            "herald_probability": p,
            "success_fidelity": stats["success_fidelity"],
        },
        "empirical": {
            "successes": stats["successes"],
            "rate": stats["empirical_rate"],
        },
    }
    checks = {
        "success_fidelity": abs(stats["success_fidelity"] - 1.0) <= args.tol,
        "herald_within_5sigma": herald_ok,
    }
    return report, checks


def cmd_schmidt(args):
    u = load_unitary(args.unitary)
    if args.dims:
        da, db = (int(x) for x in args.dims.split(","))
    else:
        root = round(u.shape[0] ** 0.5)
        if root * root != u.shape[0]:
            raise ValueError("--dims dA,dB required for unequal factors")
        da = db = root
    schmidt = operator_schmidt(u, dims=(da, db))
    su = shannon_entropy(schmidt.values ** 2)
    recon = float(np.linalg.norm(schmidt.reconstruct() - u))
    norm_dev = float(abs(np.sum(schmidt.values ** 2) - 1.0))
    report = {
        "command": "schmidt",
        "config": {
            "unitary": args.unitary, "dims": [da, db], "seed": args.seed,
        },
        "exact": {
            "schmidt_values": _floats(schmidt.values),
            "entanglement_bits": float(su),
            "reconstruction_error": recon,
        },
    }
    checks = {
        "reconstruction": recon <= args.tol,
        "values_normalized": norm_dev <= args.tol,
    }
    return report, checks


def cmd_concentrate(args):
    dist = concentrate(
        args.n, args.alpha, args.beta, mode=args.mode,
        seed=args.seed, shots=args.shots,
    )
    probs = dist.probabilities
    sample_counts = (
        _ints(np.bincount(dist.samples, minlength=args.n + 1))
        if dist.samples is not None else None
    )
    report = {
        "command": "concentrate",
        "config": {
            "n": args.n, "alpha": args.alpha, "beta": args.beta,
            "mode": args.mode, "shots": args.shots, "seed": args.seed,
        },
        "exact": {
            "sectors": [
                {"k": r.k, "term_count": r.term_count,
                 "probability": r.probability}
                for r in dist.records
            ],
            "argmax_k": int(np.argmax(probs)),
            "yield_bits": dist.yield_bits(),
            "yield_per_copy": dist.yield_bits() / args.n,
            "expected_term_count": dist.expected_term_count(),
            "sector_deviation": dist.sector_deviation,
        },
        "empirical": {"sector_counts": sample_counts},
    }
    checks = {"normalized": abs(float(probs.sum()) - 1.0) <= 1e-12}
    if dist.sector_deviation is not None:
        checks["sectors_match"] = dist.sector_deviation <= 1e-10
    return report, checks


def cmd_superdense(args):
    u = load_unitary(args.unitary)
    d = u.shape[0]
    if args.dim and args.dim != d:
        raise ValueError(f"--dim {args.dim} conflicts with unitary dim {d}")
    kind = "pauli" if d & (d - 1) == 0 else "weyl"
    basis = _basis_for(kind, d)
    tr = superdense_send(u, basis, shots=args.shots, seed=args.seed)
    eav_dev = float(
        np.abs(tr.eavesdropper_marginal - np.eye(d) / d).max()
    )
    report = {
        "command": "superdense",
        "config": {
            "unitary": args.unitary, "dim": d, "basis": kind,
            "shots": args.shots, "seed": args.seed,
        },
        "exact": {
            "labels": list(tr.labels),
            "probabilities": _floats(tr.probabilities),
            "eavesdropper_marginal_deviation": eav_dev,
            "classical_bits_per_system": float(np.log2(d * d)),
        },
        "empirical": {
            "counts": _ints(tr.counts) if tr.counts is not None else None,
        },
    }
    checks = {
        "eavesdropper_ignorant": eav_dev < 1e-12,
        "normalized": abs(float(tr.probabilities.sum()) - 1.0) <= args.tol,
    }
    return report, checks


def cmd_verify(args):
    m = load_map(args.map)
    dil = stinespring(m)
    a = dil.ancilla_dim
    if args.ancilla_basis == "computational":
        ab = np.eye(a, dtype=complex)
    else:
        omega = np.exp(2j * np.pi / a)
        ab = omega ** np.outer(np.arange(a), np.arange(a)) / np.sqrt(a)
    rep = kraus_from_ancilla_basis(dil, ab)
    if args.seed is None:
        raise ValueError("--seed is required for verify")
    d = rep.dim
    weights = np.array(
        [np.trace(dag(k) @ k).real / d for k in rep.operators]
    )
    rng = np.random.default_rng(args.seed)
    claimed = [
        int(i) for i in
        rng.choice(weights.size, size=args.steps, p=weights / weights.sum())
    ]
    if args.flip is not None:
        if not 0 <= args.flip < args.steps:
            raise ValueError("--flip index out of range")
        claimed[args.flip] = (claimed[args.flip] + 1) % len(rep)
    record = verify_sequence(
        dil, ab, EvolutionSequence(rep, tuple(claimed)), args.seed
    )
    freq = np.bincount(record.sampled, minlength=len(rep))
    expected = args.flip is None
    report = {
        "command": "verify",
        "config": {
            "map": args.map, "ancilla_basis": args.ancilla_basis,
            "steps": args.steps, "flip": args.flip, "seed": args.seed,
        },
        "exact": {
            "element_weights": _floats(weights),
            "accepted": bool(record.accepted),
            "expected_verdict": expected,
        },
        "empirical": {"outcome_counts": _ints(freq)},
    }
    checks = {"verdict_expected": record.accepted == expected}
    return report, checks


_COMMANDS = {
    "basis": cmd_basis,
    "measure": cmd_measure,
    "channel": cmd_channel,
    "compress": cmd_compress,
    "retrieve": cmd_retrieve,
    "schmidt": cmd_schmidt,
    "concentrate": cmd_concentrate,
    "superdense": cmd_superdense,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="stream seed; mandatory whenever sampling occurs")
    common.add_argument("--json", action="store_true",
                        help="emit the JSON report on stdout")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="tolerance for the invariant checks")

    parser = argparse.ArgumentParser(
        prog="evometry",
        description="probabilistic measurement and information content "
                    "of quantum evolutions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common],
                       help="build an orthogonal unitary basis")
    p.add_argument("--kind", choices=("pauli", "weyl"), default="pauli")
    p.add_argument("--dim", type=int, default=2)

    p = sub.add_parser("measure", parents=[common],
                       help="which-unitary measurement of an evolution")
    p.add_argument("--unitary", required=True)
    p.add_argument("--basis", choices=("pauli", "weyl"), default="pauli")
    p.add_argument("--u0", default=None,
                   help="reference unitary prefacing every basis element")
    p.add_argument("--state", default="zero")
    p.add_argument("--shots", type=int, default=0)

    p = sub.add_parser("channel", parents=[common],
                       help="canonical form and entropy of a channel")
    p.add_argument("--map", required=True)

    p = sub.add_parser("compress", parents=[common],
                       help="typical-set compression of a draw record")
    p.add_argument("--map", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.1)

    p = sub.add_parser("retrieve", parents=[common],
                       help="heralded retrieval of a stored operator")
    p.add_argument("--map", required=True)
    p.add_argument("--op-index", type=int, default=0)
    p.add_argument("--state", default="zero")
    p.add_argument("--trials", type=int, default=0)

    p = sub.add_parser("schmidt", parents=[common],
                       help="operator Schmidt form of an interaction")
    p.add_argument("--unitary", required=True)
    p.add_argument("--dims", default=None,
                   help="dA,dB factor dimensions (default: square split)")

    p = sub.add_parser("concentrate", parents=[common],
                       help="collective readout on n interaction copies")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--mode", choices=("exact-matrix", "combinatorial"),
                   default="combinatorial")
    p.add_argument("--shots", type=int, default=0)

    p = sub.add_parser("superdense", parents=[common],
                       help="dense coding with a unitary payload")
    p.add_argument("--unitary", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--shots", type=int, default=0)

    p = sub.add_parser("verify", parents=[common],
                       help="check a claimed draw record against a dilation")
    p.add_argument("--map", required=True)
    p.add_argument("--ancilla-basis", choices=("computational", "fourier"),
                   default="computational")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--flip", type=int, default=None,
                   help="corrupt the claimed record at this step")

    return parser


def _print_human(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for key in obj:
            value = obj[key]
            if isinstance(value, (dict, list)) and value:
                print(f"{pad}{key}:")
                _print_human(value, indent + 1)
            else:
                print(f"{pad}{key}: {value}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                _print_human(item, indent)
            else:
                print(f"{pad}- {item}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report, checks = _COMMANDS[args.command](args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
        return 2
    report["checks"] = {name: bool(ok) for name, ok in checks.items()}
    if args.json:
        sys.stdout.write(json_report(report))
    else:
        _print_human(report)
    print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return 0 if all(checks.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
