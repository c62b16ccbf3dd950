"""Seeded graph and signal generators for experiments and tests.

Randomness comes from numpy's PCG64 generator, so a (kind, params, seed)
triple reproduces the same graph bit for bit; the generator name is embedded
in experiment reports.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InputError, NumericalError
from .graph import WeightedGraph, is_connected
from .spectral import SpectralDecomposition, pw_space

GENERATOR_NAME = "numpy-PCG64"

GRAPH_KINDS = ("path", "cycle", "grid2d", "random-geometric", "erdos-renyi-weighted")

#: How many fresh draws a random generator may take before giving up on
#: producing a connected graph.
RETRY_BUDGET = 50


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def path_graph(n: int) -> WeightedGraph:
    if n < 1:
        raise InputError(f"path needs n >= 1, got {n}")
    return WeightedGraph.from_edges(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def cycle_graph(n: int) -> WeightedGraph:
    if n < 3:
        raise InputError(f"cycle needs n >= 3, got {n}")
    edges = [(i, i + 1, 1.0) for i in range(n - 1)] + [(0, n - 1, 1.0)]
    return WeightedGraph.from_edges(n, edges)


def grid2d_graph(n: int) -> WeightedGraph:
    side = math.isqrt(n)
    if side * side != n or side < 1:
        raise InputError(f"grid2d needs a perfect-square vertex count, got {n}")
    edges = []
    for r in range(side):
        for c in range(side):
            v = r * side + c
            if c + 1 < side:
                edges.append((v, v + 1, 1.0))
            if r + 1 < side:
                edges.append((v, v + side, 1.0))
    return WeightedGraph.from_edges(n, edges)


def erdos_renyi_weighted(n: int, p: float, seed: int) -> WeightedGraph:
    """G(n, p) with edge weights uniform in [0.5, 1.5]; redrawn until connected."""
    if n < 2:
        raise InputError(f"random graph needs n >= 2, got {n}")
    if not (0.0 < p <= 1.0):
        raise InputError(f"edge probability must be in (0, 1], got {p}")
    rng = _rng(seed)
    for _ in range(RETRY_BUDGET):
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    edges.append((u, v, float(rng.uniform(0.5, 1.5))))
        graph = WeightedGraph.from_edges(n, edges)
        if is_connected(graph):
            return graph
    raise NumericalError(
        f"no connected graph in {RETRY_BUDGET} draws for n={n}, p={p}, seed={seed}"
    )


def random_geometric(n: int, radius: float | None, seed: int) -> WeightedGraph:
    """Unit-weight edges between uniform points in the unit square within radius."""
    if n < 2:
        raise InputError(f"random graph needs n >= 2, got {n}")
    if radius is None:
        radius = 1.5 * math.sqrt(math.log(max(n, 2)) / (math.pi * n))
    if radius <= 0:
        raise InputError(f"radius must be positive, got {radius}")
    rng = _rng(seed)
    for _ in range(RETRY_BUDGET):
        points = rng.random((n, 2))
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if np.hypot(*(points[u] - points[v])) <= radius:
                    edges.append((u, v, 1.0))
        graph = WeightedGraph.from_edges(n, edges)
        if is_connected(graph):
            return graph
    raise NumericalError(
        f"no connected graph in {RETRY_BUDGET} draws for n={n}, radius={radius}, seed={seed}"
    )


def generate_graph(kind: str, n: int, seed: int = 0, **params) -> WeightedGraph:
    """Dispatch on kind; all kinds produce a connected graph or raise."""
    if kind == "path":
        return path_graph(n)
    if kind == "cycle":
        return cycle_graph(n)
    if kind == "grid2d":
        return grid2d_graph(n)
    if kind == "erdos-renyi-weighted":
        return erdos_renyi_weighted(n, params.pop("p", 0.3), seed)
    if kind == "random-geometric":
        return random_geometric(n, params.pop("radius", None), seed)
    raise InputError(f"unknown graph kind {kind!r}; choices: {', '.join(GRAPH_KINDS)}")


def generate_pw_signal(decomp: SpectralDecomposition, omega: float, seed: int) -> np.ndarray:
    """Unit-norm signal with standard-normal coefficients on the band basis."""
    space = pw_space(decomp, omega)
    if space.dim < 1:
        raise InputError(f"band subspace is empty for omega={omega}")
    coeffs = _rng(seed).standard_normal(space.dim)
    signal = space.basis @ coeffs
    norm = float(np.linalg.norm(signal))
    if norm == 0.0:
        raise NumericalError(f"degenerate zero draw for seed={seed}")
    return signal / norm
