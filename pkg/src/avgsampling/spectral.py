"""Graph Laplacian assembly, dense symmetric eigendecomposition, and band filters.

The Laplacian acts as (L f)(v) = sum_u (f(v) - f(u)) w(v,u); as a matrix it is
diag(degrees) minus the weight matrix, symmetric positive semidefinite, with
constants on each connected component spanning its kernel.

Bandwidth convention: a signal has bandwidth omega when it lies in the span of
eigenvectors whose *Laplacian eigenvalue* is at most omega. Under this
convention the smoothing operator powers satisfy
``norm(apply_power(s, f)) <= omega**(s/2) * norm(f)`` for every signal of
bandwidth omega.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericalError
from .graph import WeightedGraph, as_signal

#: Off-diagonal Frobenius tolerance (relative to the input norm) for the
#: cyclic Jacobi sweep, and the sweep budget.
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

#: Eigenvalues within this slack of a bandwidth still count as in-band, so a
#: band never excludes an analytically-equal eigenvalue computed with roundoff.
BAND_SLACK = 1e-12


@dataclass(frozen=True)
class LaplacianOperator:
    """Dense symmetric Laplacian matrix together with its source graph."""

    matrix: np.ndarray
    graph: WeightedGraph

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def build_laplacian(graph: WeightedGraph) -> LaplacianOperator:
    """Assemble the dense Laplacian: degrees on the diagonal, -w(u,v) off it."""
    W = graph.weight_matrix()
    L = np.diag(W.sum(axis=1)) - W
    L.flags.writeable = False
    return LaplacianOperator(matrix=L, graph=graph)


def _jacobi_eigh(matrix: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations on a symmetric matrix.

    Returns (eigenvalues ascending, eigenvector columns). Deterministic:
    fixed sweep order, stable sort, and a fixed sign convention (the first
    entry of each eigenvector that is nonzero at working precision is made
    positive).
    """
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    vecs = np.eye(n)
    scale = float(np.linalg.norm(a))
    converged = scale == 0.0
    if not converged:
        for _ in range(max_sweeps):
            off_diag = a - np.diag(np.diag(a))
            if np.linalg.norm(off_diag) <= tol * scale:
                converged = True
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    diff = a[q, q] - a[p, p]
                    # Entries far below the diagonal gap rotate by ~0; drop
                    # them outright to avoid overflow in theta.
                    if abs(apq) < 1e-300 * abs(diff):
                        a[p, q] = 0.0
                        a[q, p] = 0.0
                        continue
                    theta = diff / (2.0 * apq)
                    if abs(theta) > 1e150:
                        t = 1.0 / (2.0 * theta)
                    elif theta >= 0.0:
                        t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                    else:
                        t = 1.0 / (theta - np.sqrt(theta * theta + 1.0))
                    c = 1.0 / np.sqrt(t * t + 1.0)
                    s = t * c
                    a[p, p] -= t * apq
                    a[q, q] += t * apq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    mask = np.ones(n, dtype=bool)
                    mask[p] = False
                    mask[q] = False
                    aip = a[mask, p].copy()
                    aiq = a[mask, q].copy()
                    a[mask, p] = c * aip - s * aiq
                    a[mask, q] = s * aip + c * aiq
                    a[p, mask] = a[mask, p]
                    a[q, mask] = a[mask, q]
                    vip = vecs[:, p].copy()
                    viq = vecs[:, q].copy()
                    vecs[:, p] = c * vip - s * viq
                    vecs[:, q] = s * vip + c * viq
    if not converged:
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        raise NumericalError(
            f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
            f"(off-diagonal norm {off:.3e}, target {tol * scale:.3e})"
        )
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vecs = vecs[:, order]
    for j in range(n):
        col = vecs[:, j]
        thresh = 1e-12 * float(np.max(np.abs(col)))
        for x in col:
            if abs(x) > thresh:
                if x < 0:
                    vecs[:, j] = -col
                break
    return values, vecs


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and orthonormal eigenvector columns of a Laplacian."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def default_zero_tol(self) -> float:
        """Scale-aware threshold below which an eigenvalue counts as zero."""
        return 1e-9 * max(1.0, self.lambda_max)


def eigendecompose(
    operator: LaplacianOperator | np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> SpectralDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Output is deterministic for identical input. Raises NumericalError if the
    off-diagonal mass has not dropped below ``tol`` (relative to the input
    Frobenius norm) within the sweep budget.
    """
    matrix = operator.matrix if isinstance(operator, LaplacianOperator) else np.asarray(operator, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InputError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.size and np.max(np.abs(matrix - matrix.T)) > 1e-10 * max(1.0, float(np.max(np.abs(matrix)))):
        raise InputError("matrix is not symmetric")
    values, vectors = _jacobi_eigh(matrix, tol=tol, max_sweeps=max_sweeps)
    values.flags.writeable = False
    vectors.flags.writeable = False
    return SpectralDecomposition(eigenvalues=values, eigenvectors=vectors)


def lambda1(decomp: SpectralDecomposition, zero_tol: float | None = None) -> float:
    """First nonzero eigenvalue (the spectral gap of a connected graph).

    Requires exactly one eigenvalue below ``zero_tol``: more means the
    underlying graph is disconnected, none below would mean a non-Laplacian
    input, and all below means a single-vertex graph. Either case raises.
    """
    if zero_tol is None:
        zero_tol = decomp.default_zero_tol
    values = decomp.eigenvalues
    kernel = int(np.sum(values <= zero_tol))
    if kernel == 0:
        raise InputError("no kernel eigenvalue found; input is not a graph Laplacian")
    if kernel >= decomp.n:
        raise InputError("all eigenvalues are zero (single-vertex or edgeless graph)")
    if kernel > 1:
        raise InputError(f"graph is disconnected ({kernel} near-zero eigenvalues)")
    return float(values[1])


@dataclass(frozen=True)
class PWSpace:
    """Span of the eigenvectors with eigenvalue at most the bandwidth."""

    omega: float
    basis: np.ndarray  # n x m eigenvector columns
    eigenvalues: np.ndarray  # the m in-band eigenvalues

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def pw_space(decomp: SpectralDecomposition, omega: float) -> PWSpace:
    """Bandlimited subspace for a given bandwidth."""
    if omega < 0:
        raise InputError(f"bandwidth must be nonnegative, got {omega}")
    mask = decomp.eigenvalues <= omega + BAND_SLACK
    basis = decomp.eigenvectors[:, mask]
    values = decomp.eigenvalues[mask]
    return PWSpace(omega=float(omega), basis=basis, eigenvalues=values)


def pw_project(decomp: SpectralDecomposition, omega: float, f: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto the bandwidth-omega subspace."""
    space = pw_space(decomp, omega)
    f = np.asarray(f, dtype=float)
    if f.shape != (decomp.n,):
        raise InputError(f"signal shape {f.shape} does not match n={decomp.n}")
    return space.basis @ (space.basis.T @ f)


def apply_power(decomp: SpectralDecomposition, s: float, f: np.ndarray) -> np.ndarray:
    """Apply the s/2-th power of the Laplacian through its eigenvalues.

    Each eigen-coefficient is multiplied by lambda**(s/2); s=0 is the
    identity, s=2 is the Laplacian itself, s=1 is its square root. Kernel
    eigenvalues contribute a factor 0 for s > 0 (tiny negative roundoff
    eigenvalues are clamped to 0 first).
    """
    if s < 0:
        raise InputError(f"power must be nonnegative, got s={s}")
    f = np.asarray(f, dtype=float)
    if f.shape != (decomp.n,):
        raise InputError(f"signal shape {f.shape} does not match n={decomp.n}")
    if s == 0:
        return f.copy()
    lam = np.maximum(decomp.eigenvalues, 0.0)
    coeffs = decomp.eigenvectors.T @ f
    return decomp.eigenvectors @ (lam ** (s / 2.0) * coeffs)


def quadratic_form(operator: LaplacianOperator, f: np.ndarray) -> float:
    """The form f^T L f; equals the squared weighted gradient seminorm."""
    f = as_signal(operator.graph, f)
    return float(f @ (operator.matrix @ f))
