"""Exact and heuristic solvers for graph distance, Common Labelling and medians.

All exact solvers fix the first labelling to the identity: composing every
labelling with one common permutation leaves the objectives unchanged, so
the remaining ``m - 1`` labellings are enumerated with a mixed-radix counter
in lexicographic order.  Ties go to the lexicographically smallest tuple of
permutations, which makes results independent of how the counter range is
split between workers.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .costs import CostKind, CostSpec, pairwise_cost, permuted_slots
from .graph import (AttributedGraph, GraphSet, Permutation, SizeMismatchError,
                    all_permutations, compose, invert, num_slots)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
DEFAULT_N_CAP = 8
IMPROVE_TOL = 1e-9
# upper bound on float64 cells materialised per enumeration chunk
_CHUNK_CELLS = 1 << 22


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


@dataclass(frozen=True)
class LabellingSolution:
    permutations: tuple[Permutation, ...]
    objective_value: float
    exact: bool


@dataclass(frozen=True)
class MedianResult:
    median: AttributedGraph
    permutations: LabellingSolution
    gm_value: float


def _check_perms(s: GraphSet, perms: Sequence[Permutation]) -> None:
    if len(perms) != s.m:
        raise SizeMismatchError(f"got {len(perms)} permutations for {s.m} graphs")
    for p in perms:
        if p.n != s.n:
            raise SizeMismatchError(f"permutation size {p.n} != graph size {s.n}")


def cl_objective(s: GraphSet, perms: Sequence[Permutation], cost: CostSpec) -> float:
    """Common Labelling objective: mean of all m*m pairwise costs.

    Both orders ``(i, j)`` and ``(j, i)`` and the zero diagonal terms are
    included, normalised by ``1 / m**2``.
    """
    _check_perms(s, perms)
    total = 0.0
    for gi, pi in zip(s, perms):
        for gj, pj in zip(s, perms):
            total += pairwise_cost(gi, pi, gj, pj, cost)
    return total / s.m ** 2


def gm_objective(s: GraphSet, perms: Sequence[Permutation], g: AttributedGraph,
                 cost: CostSpec) -> float:
    """Mean cost from each relabelled member of ``s`` to ``g`` (``g`` is not permuted)."""
    _check_perms(s, perms)
    if g.n != s.n:
        raise SizeMismatchError(f"candidate median has size {g.n}, set has size {s.n}")
    ident = Permutation.identity(s.n)
    total = 0.0
    for gi, pi in zip(s, perms):
        total += pairwise_cost(gi, pi, g, ident, cost)
    return total / s.m


def _slot_center(stacked: np.ndarray, cost: CostSpec, axis: int) -> np.ndarray:
    # exact per-slot minimiser: mean for squared cost, median for absolute cost
    if cost.kind is CostKind.SUM_SQ:
        # shifted by the first member so that identical inputs reproduce exactly
        ref = np.take(stacked, [0], axis=axis)
        return np.squeeze(ref, axis=axis) + (stacked - ref).mean(axis=axis)
    return np.median(stacked, axis=axis)


def synthesize_median(s: GraphSet, perms: Sequence[Permutation], cost: CostSpec) -> AttributedGraph:
    """Graph minimising the summed cost to the relabelled members of ``s``.

    The objective decomposes per slot, so each slot gets the arithmetic mean
    (``SUM_SQ``) or the median (``SUM_ABS``; midpoint of the two central
    values when ``m`` is even) of the relabelled weights.
    """
    _check_perms(s, perms)
    stacked = np.stack([permuted_slots(g, p) for g, p in zip(s, perms)])
    center = np.clip(_slot_center(stacked, cost, axis=0), 0.0, 1.0)
    return AttributedGraph.from_slots(s.n, center)


def _perm_table(g: AttributedGraph, perms: np.ndarray) -> np.ndarray:
    """Row ``a`` holds the slot vector of ``g`` relabelled by ``perms[a]``."""
    rows, cols = np.triu_indices(g.n, k=1)
    return np.concatenate(
        [g.vertex_weights[perms], g.edge_weights[perms[:, rows], perms[:, cols]]], axis=1)


def _cost_matrix(ta: np.ndarray, tb: np.ndarray, cost: CostSpec) -> np.ndarray:
    """``out[a, b]`` = cost between slot rows ``ta[a]`` and ``tb[b]``."""
    out = np.empty((ta.shape[0], tb.shape[0]))
    step = max(1, _CHUNK_CELLS // max(1, tb.size))
    for start in range(0, ta.shape[0], step):
        block = ta[start:start + step, None, :]
        out[start:start + step] = cost.elementwise(block, tb[None, :, :]).sum(axis=2)
    return out


def _digits(start: int, stop: int, radix: int, width: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.shape[0], width), dtype=np.int64)
    for pos in range(width - 1, -1, -1):
        out[:, pos] = idx % radix
        idx //= radix
    return out


def _search(total: int, chunk: int, evaluate: Callable[[np.ndarray], np.ndarray],
            radix: int, width: int, workers: int) -> int:
    """Index of the first minimum of ``evaluate`` over the counter ``[0, total)``."""

    def best_in(bounds: tuple[int, int]) -> tuple[float, int]:
        lo, hi = bounds
        values = evaluate(_digits(lo, hi, radix, width))
        k = int(np.argmin(values))
        return float(values[k]), lo + k

    ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(best_in, ranges))
    else:
        results = [best_in(r) for r in ranges]
    return min(results)[1]


def enumeration_size(n: int, m: int) -> int:
    return math.factorial(n) ** (m - 1)


def _check_budget(s: GraphSet, budget: int) -> int:
    need = enumeration_size(s.n, s.m)
    if need > budget:
        raise BudgetExceededError(
            f"exact enumeration needs (n!)^(m-1) = {need} candidates for n={s.n}, m={s.m}; "
            f"budget is {budget} (raise it to at least {need})")
    return need


def pairwise_distance(g1: AttributedGraph, g2: AttributedGraph, cost: CostSpec,
                      n_cap: int = DEFAULT_N_CAP) -> tuple[float, Permutation, Permutation]:
    """Minimum cost over all relabellings of ``g2`` against ``g1`` held fixed.

    Returns ``(value, identity, best_pi2)``.
    """
    if g1.n != g2.n:
        raise SizeMismatchError(f"graph sizes differ: {g1.n} != {g2.n}")
    if g1.n > n_cap:
        raise BudgetExceededError(f"n={g1.n} exceeds the enumeration cap of {n_cap}")
    perms = all_permutations(g1.n)
    values = cost.elementwise(g1.slots()[None, :], _perm_table(g2, perms)).sum(axis=1)
    best = Permutation(tuple(perms[int(np.argmin(values))]))
    ident = Permutation.identity(g1.n)
    return pairwise_cost(g1, ident, g2, best, cost), ident, best


def _chunk_size(m: int, n: int) -> int:
    return max(1024, _CHUNK_CELLS // (m * num_slots(n)))


def exact_common_labelling(s: GraphSet, cost: CostSpec, budget: int = DEFAULT_BUDGET,
                           workers: int = 1) -> LabellingSolution:
    """Globally optimal Common Labelling by exhaustive enumeration."""
    total = _check_budget(s, budget)
    perms = all_permutations(s.n)
    k = perms.shape[0]
    m = s.m
    tables = [_perm_table(g, perms) for g in s]
    # pair costs against the fixed first graph need only the identity row
    first = [None] + [_cost_matrix(tables[0][:1], tables[j], cost)[0] for j in range(1, m)]
    pair = {(i, j): _cost_matrix(tables[i], tables[j], cost)
            for i in range(1, m) for j in range(i + 1, m)}

    def evaluate(d: np.ndarray) -> np.ndarray:
        acc = np.zeros(d.shape[0])
        for j in range(1, m):
            acc += first[j][d[:, j - 1]]
        for (i, j), table in pair.items():
            acc += table[d[:, i - 1], d[:, j - 1]]
        return acc

    best = _search(total, _chunk_size(m, s.n), evaluate, k, m - 1, workers) if m > 1 else 0
    chosen = _decode(best, perms, m)
    return LabellingSolution(chosen, cl_objective(s, chosen, cost), exact=True)


def _decode(index: int, perms: np.ndarray, m: int) -> tuple[Permutation, ...]:
    k = perms.shape[0]
    digits = _digits(index, index + 1, k, m - 1)[0] if m > 1 else []
    return (Permutation.identity(perms.shape[1]),) + tuple(
        Permutation(tuple(perms[d])) for d in digits)


def exact_generalized_median(s: GraphSet, cost: CostSpec, budget: int = DEFAULT_BUDGET,
                             workers: int = 1) -> MedianResult:
    """Generalized Median Graph by enumerating labellings and synthesising per slot.

    For a fixed labelling tuple the per-slot mean (``SUM_SQ``) or median
    (``SUM_ABS``) is the exact minimiser over all weighted graphs, so the
    enumeration yields the global optimum for both supported costs.
    """
    total = _check_budget(s, budget)
    perms = all_permutations(s.n)
    k = perms.shape[0]
    m = s.m
    tables = [_perm_table(g, perms) for g in s]
    base = tables[0][0]

    def evaluate(d: np.ndarray) -> np.ndarray:
        stacked = np.empty((d.shape[0], m, base.shape[0]))
        stacked[:, 0, :] = base
        for i in range(1, m):
            stacked[:, i, :] = tables[i][d[:, i - 1]]
        center = _slot_center(stacked, cost, axis=1)
        per_graph = cost.elementwise(stacked, center[:, None, :]).sum(axis=2)
        acc = np.zeros(d.shape[0])
        for i in range(m):
            acc += per_graph[:, i]
        return acc

    best = _search(total, _chunk_size(m, s.n), evaluate, k, m - 1, workers) if m > 1 else 0
    chosen = _decode(best, perms, m)
    median = synthesize_median(s, chosen, cost)
    value = gm_objective(s, chosen, median, cost)
    return MedianResult(median, LabellingSolution(chosen, value, exact=True), value)


def heuristic_common_labelling(s: GraphSet, cost: CostSpec, pivot: int = 0,
                               n_cap: int = DEFAULT_N_CAP) -> LabellingSolution:
    """Star alignment to ``s[pivot]`` followed by coordinate descent.

    Every graph is first optimally aligned to the pivot graph, which gives
    transitively consistent labellings.  Then each labelling in turn is
    re-optimised with the others held fixed until a full sweep improves the
    objective by no more than ``IMPROVE_TOL``.  ``pivot`` is 0-based.
    """
    if not 0 <= pivot < s.m:
        raise IndexError(f"pivot {pivot} out of range for {s.m} graphs")
    if s.n > n_cap:
        raise BudgetExceededError(f"n={s.n} exceeds the enumeration cap of {n_cap}")
    m = s.m
    perms = all_permutations(s.n)
    lookup = {tuple(int(x) for x in p): a for a, p in enumerate(perms)}
    current = []
    for i, g in enumerate(s):
        if i == pivot:
            current.append(0)
        else:
            _, _, p = pairwise_distance(s[pivot], g, cost, n_cap=n_cap)
            current.append(lookup[p.map])

    tables = [_perm_table(g, perms) for g in s]

    def contribution(i: int) -> np.ndarray:
        acc = np.zeros(perms.shape[0])
        for j in range(m):
            if j != i:
                acc += cost.elementwise(tables[i], tables[j][current[j]][None, :]).sum(axis=1)
        return acc

    sweeps = 0
    improved = m > 1
    while improved:
        improved = False
        sweeps += 1
        for i in range(m):
            values = contribution(i)
            a = int(np.argmin(values))
            if values[a] < values[current[i]] - IMPROVE_TOL:
                current[i] = a
                improved = True
    log.debug("coordinate descent finished after %d sweeps", sweeps)

    raw = [Permutation(tuple(perms[a])) for a in current]
    shift = invert(raw[0])
    chosen = tuple(compose(p, shift) for p in raw)
    return LabellingSolution(chosen, cl_objective(s, chosen, cost), exact=False)


def approximated_median(s: GraphSet, cost: CostSpec,
                        mode: Literal["exact", "heuristic"] = "exact", *,
                        pivot: int = 0, budget: int = DEFAULT_BUDGET,
                        workers: int = 1) -> MedianResult:
    """Synthesise a median from a Common Labelling.

    The returned ``gm_value`` is the median objective of the synthesised
    graph under the labelling's own permutations; ``permutations`` carries
    the Common Labelling solution and its value.
    """
    if mode == "exact":
        sol = exact_common_labelling(s, cost, budget=budget, workers=workers)
    elif mode == "heuristic":
        sol = heuristic_common_labelling(s, cost, pivot=pivot)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    median = synthesize_median(s, sol.permutations, cost)
    return MedianResult(median, sol, gm_objective(s, sol.permutations, median, cost))
