"""Variational splines interpolating prescribed cluster averages.

The order-k spline for targets v is the unique signal minimizing the
smoothness seminorm ``norm(L^{k/2} u)`` among all signals whose scaled
cluster averages equal v. On a connected graph with a full disjoint cover the
minimizer exists and is unique for every k >= 1: the only constant signal
with all-zero averages is zero.

Solved in eigen-coordinates. Writing B for the averages-of-eigenvectors
matrix (which has exactly orthonormal rows, so B^T v is a feasible point) and
N for an orthonormal basis of its kernel, the spline is ``B^T v + N y`` with
y the least-squares solution of ``min || D^{1/2} (B^T v + N y) ||`` where
D^{1/2} scales each eigen-coordinate by lambda**(k/2). The scaling keeps the
solve's condition near (lambda_max/lambda_1)**(k/2) instead of its square,
and kernel coordinates (lambda = 0) carry no weight at all, entering through
the constraints only.

When a signal of bandwidth omega is interpolated through a partition with
gamma = (1+alpha)/alpha * omega/Lambda < 1, the spline of order k = 2^l
recovers it up to a factor 2*gamma**k of its norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericalError
from .partitions import ClusterPartition, analyze, average_functionals
from .spectral import SpectralDecomposition, pw_project

#: Refuse spline solves whose equilibrated system is estimated worse than this.
CONDITION_LIMIT = 1e14


@dataclass(frozen=True)
class SplineProblem:
    """Order, target averages, and the partition they live on.

    The recovery rate 2*gamma**k is proven for orders that are powers of two;
    other positive integer orders are accepted and solved, but results carry
    ``order_is_power_of_two=False`` so reports can label them.
    """

    order: int
    targets: np.ndarray
    partition: ClusterPartition

    def __post_init__(self):
        if self.order < 1:
            raise InputError(f"spline order must be a positive integer, got {self.order}")
        targets = np.asarray(self.targets, dtype=float)
        if targets.shape != (self.partition.num_clusters,):
            raise InputError(
                f"targets length {targets.shape} does not match "
                f"{self.partition.num_clusters} clusters"
            )
        if not np.all(np.isfinite(targets)):
            raise InputError("targets contain non-finite entries")
        object.__setattr__(self, "targets", targets)

    @property
    def order_is_power_of_two(self) -> bool:
        return self.order & (self.order - 1) == 0


@dataclass(frozen=True)
class SplineSolution:
    signal: np.ndarray
    order: int
    seminorm: float
    achieved_averages: np.ndarray
    targets: np.ndarray
    kkt_residual: float
    condition_estimate: float
    order_is_power_of_two: bool


def _constraint_rows(decomp: SpectralDecomposition, partition: ClusterPartition) -> np.ndarray:
    """Averages of each eigenvector: the constraint matrix in eigen-coordinates."""
    return average_functionals(partition).xi @ decomp.eigenvectors  # J x n


def _kernel_basis(B: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the kernel of the constraint matrix."""
    J, n = B.shape
    _, singular, vt = np.linalg.svd(B)
    rank = int(np.sum(singular > 1e-10 * singular[0])) if singular.size else 0
    if rank < J:
        raise InputError(
            f"average constraints are rank-deficient (rank {rank} of {J}); "
            "the partition does not define an interpolation problem"
        )
    return vt[rank:].T  # n x (n - J)


def _power_weights(decomp: SpectralDecomposition, k: int) -> np.ndarray:
    """lambda**(k/2) with kernel eigenvalues pinned exactly to zero."""
    lam = decomp.eigenvalues
    weights = np.where(lam > decomp.default_zero_tol, np.maximum(lam, 0.0), 0.0)
    return weights ** (k / 2.0)


def _condition_estimate(decomp: SpectralDecomposition, k: int) -> float:
    lam = decomp.eigenvalues
    positive = lam[lam > decomp.default_zero_tol]
    if positive.size == 0:
        return 1.0
    return float((positive[-1] / positive[0]) ** (k / 2.0))


def solve_spline(
    decomp: SpectralDecomposition,
    partition: ClusterPartition,
    problem: SplineProblem,
) -> SplineSolution:
    """Minimize the order-k smoothness seminorm subject to prescribed averages.

    Raises NumericalError when the estimated condition of the equilibrated
    system exceeds the double-precision budget, rather than returning digits
    that cannot be trusted.
    """
    if partition.n != decomp.n:
        raise InputError("partition and decomposition sizes differ")
    k = problem.order
    condition = _condition_estimate(decomp, k)
    if condition > CONDITION_LIMIT:
        raise NumericalError(
            f"order-{k} spline system condition ~{condition:.2e} exceeds "
            f"{CONDITION_LIMIT:.0e}; reduce the order or improve the spectral gap"
        )

    B = _constraint_rows(decomp, partition)
    kernel = _kernel_basis(B)
    weights = _power_weights(decomp, k)

    feasible = B.T @ problem.targets  # minimum-norm feasible point, exact by row orthonormality
    scaled_kernel = weights[:, None] * kernel
    scaled_feasible = weights * feasible
    y, *_ = np.linalg.lstsq(scaled_kernel, -scaled_feasible, rcond=None)
    coeffs = feasible + kernel @ y
    signal = decomp.eigenvectors @ coeffs

    smoothed = weights * coeffs
    seminorm = float(np.linalg.norm(smoothed))
    defect_vec = scaled_kernel.T @ smoothed
    defect = float(np.max(np.abs(defect_vec))) if defect_vec.size else 0.0
    col_norms = np.linalg.norm(scaled_kernel, axis=0)
    scale = max(1.0, seminorm * float(col_norms.max() if col_norms.size else 0.0))
    achieved = analyze(partition, signal)
    return SplineSolution(
        signal=signal,
        order=k,
        seminorm=seminorm,
        achieved_averages=achieved,
        targets=problem.targets,
        kkt_residual=defect / scale,
        condition_estimate=condition,
        order_is_power_of_two=problem.order_is_power_of_two,
    )


def interpolate(
    decomp: SpectralDecomposition,
    partition: ClusterPartition,
    f: np.ndarray,
    k: int,
) -> SplineSolution:
    """Spline of order k whose cluster averages match those of the signal."""
    targets = analyze(partition, np.asarray(f, dtype=float))
    return solve_spline(decomp, partition, SplineProblem(order=k, targets=targets, partition=partition))


@dataclass(frozen=True)
class OrthogonalityResult:
    """Outcome of the spline characterization test.

    A signal minimizes the order-k seminorm among signals with its averages
    exactly when its smoothed image is orthogonal to the smoothed image of
    every zero-average signal. ``defect`` is the largest such inner product
    over an orthonormal basis of the zero-average space; ``normalized``
    rescales it by the product of the factor norms, and ``is_spline`` applies
    the acceptance threshold to that.
    """

    defect: float
    scale: float
    normalized: float
    is_spline: bool


def orthogonality_check(
    decomp: SpectralDecomposition,
    partition: ClusterPartition,
    u: np.ndarray,
    k: int,
    tol: float = 1e-8,
) -> OrthogonalityResult:
    if k < 1:
        raise InputError(f"spline order must be a positive integer, got {k}")
    u = np.asarray(u, dtype=float)
    if u.shape != (decomp.n,):
        raise InputError(f"signal shape {u.shape} does not match n={decomp.n}")
    B = _constraint_rows(decomp, partition)
    kernel = _kernel_basis(B)
    weights = _power_weights(decomp, k)
    scaled_kernel = weights[:, None] * kernel
    smoothed = weights * (decomp.eigenvectors.T @ u)
    defect_vec = scaled_kernel.T @ smoothed
    defect = float(np.max(np.abs(defect_vec))) if defect_vec.size else 0.0
    col_norms = np.linalg.norm(scaled_kernel, axis=0)
    scale = max(1.0, float(np.linalg.norm(smoothed)) * float(col_norms.max() if col_norms.size else 0.0))
    normalized = defect / scale
    return OrthogonalityResult(
        defect=defect,
        scale=scale,
        normalized=normalized,
        is_spline=normalized <= tol,
    )


def zero_average_signal(
    decomp: SpectralDecomposition,
    partition: ClusterPartition,
    coefficients: np.ndarray,
) -> np.ndarray:
    """A vertex-space signal with zero averages, from kernel coordinates.

    Maps arbitrary coefficients through the orthonormal kernel basis of the
    constraint matrix; useful for building feasible perturbations of a spline.
    """
    B = _constraint_rows(decomp, partition)
    kernel = _kernel_basis(B)
    coefficients = np.asarray(coefficients, dtype=float)
    if coefficients.shape != (kernel.shape[1],):
        raise InputError(
            f"expected {kernel.shape[1]} kernel coordinates, got {coefficients.shape}"
        )
    return decomp.eigenvectors @ (kernel @ coefficients)


@dataclass(frozen=True)
class ConvergenceRow:
    order: int
    rel_error: float
    bound: float
    within_bound: bool
    proved: bool


def spline_convergence_experiment(
    decomp: SpectralDecomposition,
    partition: ClusterPartition,
    omega: float,
    alpha: float,
    f: np.ndarray,
    k_list: tuple[int, ...] | list[int],
    tol: float = 1e-8,
) -> tuple[ConvergenceRow, ...]:
    """Interpolate a bandlimited signal at several orders against 2*gamma**k.

    Refuses when gamma >= 1 (no rate is guaranteed there) or when the signal
    has out-of-band content (the bound's hypothesis would be violated).
    Rows with ``proved=False`` mark orders that are not powers of two, where
    the bound is reported for reference only.
    """
    if alpha <= 0:
        raise InputError(f"alpha must be positive, got {alpha}")
    if not math.isfinite(partition.lambda_xi):
        gamma = 0.0
    else:
        gamma = (1.0 + alpha) / alpha * omega / partition.lambda_xi
    if gamma >= 1.0:
        raise InputError(
            f"gamma={gamma:.4f} >= 1 for omega={omega}, alpha={alpha}, "
            f"Lambda={partition.lambda_xi}; no convergence rate applies"
        )
    f = np.asarray(f, dtype=float)
    norm_f = float(np.linalg.norm(f))
    if norm_f == 0.0:
        raise InputError("signal is zero")
    in_band = pw_project(decomp, omega, f)
    if float(np.linalg.norm(f - in_band)) > 1e-9 * norm_f:
        raise InputError(
            f"signal has out-of-band content for omega={omega}; "
            "project it first or lower the bandwidth"
        )
    rows = []
    for k in k_list:
        solution = interpolate(decomp, partition, f, int(k))
        rel = float(np.linalg.norm(f - solution.signal)) / norm_f
        bound = 2.0 * gamma ** int(k)
        rows.append(
            ConvergenceRow(
                order=int(k),
                rel_error=rel,
                bound=bound,
                within_bound=rel <= bound + tol,
                proved=solution.order_is_power_of_two,
            )
        )
    return tuple(rows)
