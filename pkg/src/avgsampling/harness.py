"""End-to-end experiment on a path graph with pair clusters, and stable reports.

Reports are plain dicts serialized with sorted keys and shortest-roundtrip
float repr, so an identical spec (including seeds) produces byte-identical
output. Nothing time- or host-dependent is recorded.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .generators import GENERATOR_NAME, generate_pw_signal, path_graph
from .partitions import build_frame_system, optimal_alpha, pairs_partition, validate_partition
from .reconstruct import sample_and_reconstruct_roundtrip
from .spectral import build_laplacian, eigendecompose
from .splines import spline_convergence_experiment

SCHEMA_VERSION = 1

DEFAULT_SPLINE_ORDERS = (1, 2, 4, 8)


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json can serialize them."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if not math.isfinite(value):
            return repr(value)
        return value
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    return obj


def stable_json(payload: dict) -> str:
    """Deterministic JSON: sorted keys, compact separators, trailing newline."""
    return json.dumps(_plain(payload), sort_keys=True, separators=(",", ":")) + "\n"


@dataclass(frozen=True)
class ExperimentSpec:
    """Echo of everything needed to reproduce a run bit for bit."""

    kind: str
    n: int
    omega: float
    alpha: float
    seed: int
    trials: int
    k_list: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "omega": self.omega,
            "alpha": self.alpha,
            "seed": self.seed,
            "trials": self.trials,
            "k_list": list(self.k_list),
        }


def demo_path(
    n: int,
    omega: float,
    alpha: float,
    seed: int = 0,
    trials: int = 3,
    k_list: tuple[int, ...] = DEFAULT_SPLINE_ORDERS,
) -> dict:
    """Full pipeline on a path graph with consecutive-pair clusters.

    Builds the spectrum, verifies the pair-cluster partition constant, forms
    the frame system, and per seeded trial runs both reconstruction methods
    plus the spline order sweep. Returns a report dict ready for
    :func:`stable_json`. When gamma >= 1 the run still completes, recording
    empirical bounds and the structured failures instead of guarantees.
    """
    if n < 4 or n % 2 != 0:
        raise InputError(f"demo needs an even n >= 4, got {n}")
    if trials < 1:
        raise InputError(f"trials must be positive, got {trials}")
    spec = ExperimentSpec(
        kind="demo-path", n=n, omega=float(omega), alpha=float(alpha),
        seed=int(seed), trials=int(trials), k_list=tuple(int(k) for k in k_list),
    )

    graph = path_graph(n)
    decomp = eigendecompose(build_laplacian(graph))
    partition = validate_partition(graph, pairs_partition(n))

    analytic = 2.0 - 2.0 * np.cos(np.arange(n) * np.pi / n)
    spectrum_err = float(np.max(np.abs(decomp.eigenvalues - analytic)))
    in_band = bool(
        decomp.eigenvalues[0] >= -1e-10 and decomp.eigenvalues[-1] <= 4.0 + 1e-10
    )

    frame = build_frame_system(decomp, partition, omega, alpha)
    report: dict = {
        "schema": SCHEMA_VERSION,
        "generator": GENERATOR_NAME,
        "spec": spec.to_dict(),
        "lambda_xi": partition.lambda_xi,
        "lambda_xi_matches_pair_value": bool(abs(partition.lambda_xi - 2.0) <= 1e-12),
        "gamma": frame.gamma,
        "guarantee_active": frame.guarantee_active,
        "spectrum": {
            "eigenvalues": decomp.eigenvalues,
            "max_err_vs_cos_formula": spectrum_err,
            "within_0_4": in_band,
        },
        "frame": {
            "a": frame.lower,
            "b": frame.upper,
            "is_frame": frame.is_frame,
            "band_dim": frame.dim,
            "num_clusters": frame.num_clusters,
        },
    }
    if frame.guarantee_active:
        alpha_star, best_bound = optimal_alpha(omega, partition.lambda_xi)
        report["alpha_star"] = alpha_star
        report["lower_bound_at_alpha_star"] = best_bound

    trial_records = []
    iter_errors, dual_errors, spline_ok_flags = [], [], []
    for trial in range(trials):
        trial_seed = seed + trial
        signal = generate_pw_signal(decomp, omega, trial_seed)
        roundtrip = sample_and_reconstruct_roundtrip(
            graph, partition, omega, alpha, signal, decomp=decomp
        )
        record: dict = {"trial": trial, "seed": trial_seed}
        if roundtrip.frame_ok:
            record["frame_iter"] = {
                "iterations": roundtrip.frame_iter.iterations,
                "residual": roundtrip.frame_iter.residual,
                "converged": roundtrip.frame_iter.converged,
                "eta": roundtrip.eta,
                "rel_error": roundtrip.frame_iter_error / max(roundtrip.target_norm, 1e-300),
            }
            record["dual"] = {
                "residual": roundtrip.dual.residual,
                "rel_error": roundtrip.dual_error / max(roundtrip.target_norm, 1e-300),
            }
            iter_errors.append(record["frame_iter"]["rel_error"])
            dual_errors.append(record["dual"]["rel_error"])
        else:
            record["reconstruction_failure"] = roundtrip.failure
        if frame.guarantee_active:
            rows = spline_convergence_experiment(
                decomp, partition, omega, alpha, signal, spec.k_list
            )
            record["splines"] = [
                {
                    "k": row.order,
                    "rel_error": row.rel_error,
                    "bound_2gamma_k": row.bound,
                    "within_bound": row.within_bound,
                    "proved": row.proved,
                }
                for row in rows
            ]
            spline_ok_flags.append(all(row.within_bound for row in rows))
        else:
            record["splines_skipped"] = f"gamma={frame.gamma} >= 1"
        trial_records.append(record)

    report["trials"] = trial_records
    report["aggregate"] = {
        "max_frame_iter_rel_error": max(iter_errors) if iter_errors else None,
        "max_dual_rel_error": max(dual_errors) if dual_errors else None,
        "mean_dual_rel_error": (sum(dual_errors) / len(dual_errors)) if dual_errors else None,
        "all_spline_bounds_hold": all(spline_ok_flags) if spline_ok_flags else None,
    }
    return report
