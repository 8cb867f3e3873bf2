"""Weighted graphs, vertex permutations and null-vertex padding.

A graph on ``n`` vertices is a vector of vertex weights plus a symmetric
``n x n`` matrix of edge weights with a zero diagonal.  Every weight lies in
``[0, 1]``; a weight of 0 means the vertex or edge does not exist.

Permutations are stored 0-based in memory.  The file format and the CLI use
1-based indices (see :meth:`Permutation.one_based`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

WEIGHT_TOL = 1e-12


class SizeMismatchError(ValueError):
    """Raised when graphs and permutations of different sizes are combined."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AttributedGraph:
    """Undirected graph with scalar vertex and edge weights in [0, 1].

    Construction copies and validates the inputs; the stored arrays are
    read-only so instances can be shared freely.
    """

    vertex_weights: np.ndarray
    edge_weights: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vertex_weights, dtype=np.float64).reshape(-1)
        n = v.shape[0]
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        e = np.array(self.edge_weights, dtype=np.float64)
        if n == 1 and e.size == 0:
            e = np.zeros((1, 1))
        if e.shape != (n, n):
            raise ValueError(f"edge matrix has shape {e.shape}, expected {(n, n)}")
        for name, a in (("vertex", v), ("edge", e)):
            if not np.all(np.isfinite(a)):
                raise ValueError(f"{name} weights must be finite")
            if a.min() < -WEIGHT_TOL or a.max() > 1.0 + WEIGHT_TOL:
                raise ValueError(f"{name} weights must lie in [0, 1]")
        if np.any(np.diag(e) != 0.0):
            raise ValueError("edge matrix diagonal must be 0")
        if not np.array_equal(e, e.T):
            raise ValueError("edge matrix must be symmetric")
        object.__setattr__(self, "vertex_weights", _frozen(np.clip(v, 0.0, 1.0)))
        object.__setattr__(self, "edge_weights", _frozen(np.clip(e, 0.0, 1.0)))

    @property
    def n(self) -> int:
        return self.vertex_weights.shape[0]

    @classmethod
    def from_edges(cls, vertex_weights: Sequence[float],
                   edges: Iterable[tuple[int, int, float]] = ()) -> AttributedGraph:
        """Build a graph from a 0-based edge list ``(r, s, weight)``."""
        n = len(vertex_weights)
        e = np.zeros((n, n))
        for r, s, w in edges:
            if r == s:
                raise ValueError(f"self-loop on vertex {r}")
            e[r, s] = e[s, r] = w
        return cls(np.asarray(vertex_weights, dtype=np.float64), e)

    def edges(self) -> list[tuple[int, int, float]]:
        """Nonzero edges as 0-based ``(r, s, weight)`` with ``r < s``."""
        rows, cols = np.triu_indices(self.n, k=1)
        return [(int(r), int(s), float(self.edge_weights[r, s]))
                for r, s in zip(rows, cols) if self.edge_weights[r, s] != 0.0]

    def slots(self) -> np.ndarray:
        """Vertex weights followed by the upper-triangle edge weights (r < s)."""
        rows, cols = np.triu_indices(self.n, k=1)
        return np.concatenate([self.vertex_weights, self.edge_weights[rows, cols]])

    @classmethod
    def from_slots(cls, n: int, slots: np.ndarray) -> AttributedGraph:
        """Inverse of :meth:`slots`."""
        slots = np.asarray(slots, dtype=np.float64)
        if slots.shape != (num_slots(n),):
            raise SizeMismatchError(f"expected {num_slots(n)} slots for n={n}, got {slots.shape}")
        e = np.zeros((n, n))
        rows, cols = np.triu_indices(n, k=1)
        e[rows, cols] = slots[n:]
        e[cols, rows] = slots[n:]
        return cls(slots[:n].copy(), e)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AttributedGraph):
            return NotImplemented
        return (np.array_equal(self.vertex_weights, other.vertex_weights)
                and np.array_equal(self.edge_weights, other.edge_weights))

    def __hash__(self) -> int:
        return hash((self.vertex_weights.tobytes(), self.edge_weights.tobytes()))

    def __repr__(self) -> str:
        return f"AttributedGraph(n={self.n}, vertex_weights={self.vertex_weights.tolist()}, edges={self.edges()})"


def num_slots(n: int) -> int:
    """Number of vertex slots plus unordered vertex pairs."""
    return n + n * (n - 1) // 2


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on ``{0, ..., n-1}``; ``map[r]`` is the image of ``r``.

    Ordering is lexicographic on ``map``, which is the tie-break order used
    by the solvers.
    """

    map: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(int(x) for x in self.map)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a permutation: {m}")
        object.__setattr__(self, "map", m)

    @property
    def n(self) -> int:
        return len(self.map)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> Permutation:
        return cls(tuple(int(x) - 1 for x in images))

    def one_based(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.map)

    def is_identity(self) -> bool:
        return all(r == x for r, x in enumerate(self.map))

    def __call__(self, r: int) -> int:
        return self.map[r]

    def __len__(self) -> int:
        return len(self.map)

    def __iter__(self) -> Iterator[int]:
        return iter(self.map)

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``P`` with ``(P @ x)[r] == x[map[r]]``."""
        p = np.zeros((self.n, self.n))
        p[np.arange(self.n), self.map] = 1.0
        return p

    def __str__(self) -> str:
        return "(" + " ".join(str(x) for x in self.one_based()) + ")"


def _check_sizes(a: int, b: int) -> None:
    if a != b:
        raise SizeMismatchError(f"size mismatch: {a} != {b}")


def apply_permutation(g: AttributedGraph, pi: Permutation) -> AttributedGraph:
    """Relabel ``g`` so that vertex ``r`` of the result is vertex ``pi(r)`` of ``g``."""
    _check_sizes(pi.n, g.n)
    idx = np.asarray(pi.map)
    return AttributedGraph(g.vertex_weights[idx], g.edge_weights[np.ix_(idx, idx)])


def compose(pi: Permutation, sigma: Permutation) -> Permutation:
    """Return ``pi o sigma``, i.e. ``r -> pi(sigma(r))``.

    With this convention ``apply_permutation(g, compose(pi, sigma))`` equals
    ``apply_permutation(apply_permutation(g, pi), sigma)``.
    """
    _check_sizes(pi.n, sigma.n)
    return Permutation(tuple(pi.map[s] for s in sigma.map))


def invert(pi: Permutation) -> Permutation:
    inv = [0] * pi.n
    for r, x in enumerate(pi.map):
        inv[x] = r
    return Permutation(tuple(inv))


def pad_to_size(g: AttributedGraph, n_target: int) -> AttributedGraph:
    """Append null vertices (weight 0, no incident edges) up to ``n_target``."""
    if n_target < g.n:
        raise ValueError(f"cannot pad a graph of size {g.n} down to {n_target}")
    if n_target == g.n:
        return g
    v = np.zeros(n_target)
    v[:g.n] = g.vertex_weights
    e = np.zeros((n_target, n_target))
    e[:g.n, :g.n] = g.edge_weights
    return AttributedGraph(v, e)


def all_permutations(n: int) -> np.ndarray:
    """All permutations of ``range(n)`` as rows, in lexicographic order."""
    from itertools import permutations
    out = np.fromiter((x for p in permutations(range(n)) for x in p),
                      dtype=np.intp, count=math.factorial(n) * n)
    return out.reshape(math.factorial(n), n)


@dataclass(frozen=True)
class GraphSet:
    """An ordered collection of ``m >= 1`` graphs sharing one size ``n``."""

    graphs: tuple[AttributedGraph, ...]

    def __post_init__(self) -> None:
        graphs = tuple(self.graphs)
        if not graphs:
            raise ValueError("a graph set needs at least one graph")
        sizes = {g.n for g in graphs}
        if len(sizes) != 1:
            raise SizeMismatchError(f"graphs have different sizes {sorted(sizes)}; pad them first")
        object.__setattr__(self, "graphs", graphs)

    @classmethod
    def padded(cls, graphs: Iterable[AttributedGraph]) -> GraphSet:
        """Pad every graph with null vertices to the largest size, then wrap."""
        graphs = list(graphs)
        if not graphs:
            raise ValueError("a graph set needs at least one graph")
        n = max(g.n for g in graphs)
        return cls(tuple(pad_to_size(g, n) for g in graphs))

    @property
    def n(self) -> int:
        return self.graphs[0].n

    @property
    def m(self) -> int:
        return len(self.graphs)

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self) -> Iterator[AttributedGraph]:
        return iter(self.graphs)

    def __getitem__(self, i: int) -> AttributedGraph:
        return self.graphs[i]
