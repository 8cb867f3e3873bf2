"""Fixed-correspondence costs between permuted graphs.

Two cost kinds are supported.  ``SUM_ABS`` sums absolute weight differences
over all slots and is a metric.  ``SUM_SQ`` sums squared differences (the
squared Euclidean distance between slot vectors) and is not a metric: it
fails the triangle inequality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .graph import AttributedGraph, Permutation, SizeMismatchError

EQ_TOL = 1e-9


class CostKind(str, enum.Enum):
    SUM_ABS = "abs"
    SUM_SQ = "sq"


@dataclass(frozen=True)
class CostSpec:
    kind: CostKind

    @property
    def is_metric(self) -> bool:
        return self.kind is CostKind.SUM_ABS

    @classmethod
    def parse(cls, text: str) -> CostSpec:
        """Accept ``abs``/``sq`` as well as ``SUM_ABS``/``SUM_SQ``."""
        t = text.strip().lower()
        t = {"sum_abs": "abs", "sum_sq": "sq"}.get(t, t)
        return cls(CostKind(t))

    def elementwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        d = np.subtract(a, b)
        if self.kind is CostKind.SUM_ABS:
            return np.abs(d)
        return d * d

    def __str__(self) -> str:
        return self.kind.value


SUM_ABS = CostSpec(CostKind.SUM_ABS)
SUM_SQ = CostSpec(CostKind.SUM_SQ)


def permuted_slots(g: AttributedGraph, pi: Permutation) -> np.ndarray:
    """Slot vector of ``g`` relabelled by ``pi``.

    Entry ``r`` is ``V[pi(r)]``; the pair slot ``(r, s)``, ``r < s``, is
    ``E[pi(r), pi(s)]``.
    """
    if pi.n != g.n:
        raise SizeMismatchError(f"permutation size {pi.n} != graph size {g.n}")
    idx = np.asarray(pi.map)
    rows, cols = np.triu_indices(g.n, k=1)
    return np.concatenate([g.vertex_weights[idx], g.edge_weights[idx[rows], idx[cols]]])


def pairwise_cost(g_i: AttributedGraph, pi_i: Permutation,
                  g_j: AttributedGraph, pi_j: Permutation, cost: CostSpec) -> float:
    """Cost between ``g_i`` relabelled by ``pi_i`` and ``g_j`` relabelled by ``pi_j``."""
    if g_i.n != g_j.n:
        raise SizeMismatchError(f"graph sizes differ: {g_i.n} != {g_j.n}")
    a = permuted_slots(g_i, pi_i)
    b = permuted_slots(g_j, pi_j)
    return float(np.sum(cost.elementwise(a, b)))


@dataclass(frozen=True)
class MetricAxiomReport:
    identity_ok: bool = True
    positivity_ok: bool = True
    symmetry_ok: bool = True
    triangle_ok: bool = True
    # (axiom name, ((graph, permutation), ...)) for the first violation seen
    counterexample: Optional[tuple[str, tuple[tuple[AttributedGraph, Permutation], ...]]] = None

    @property
    def all_ok(self) -> bool:
        return self.identity_ok and self.positivity_ok and self.symmetry_ok and self.triangle_ok


def check_metric_axioms(cost: CostSpec,
                        sample: Sequence[tuple[AttributedGraph, Permutation]],
                        tol: float = EQ_TOL) -> MetricAxiomReport:
    """Test the four metric axioms on every pair and triple of ``sample``.

    Each sample element is a graph together with the permutation applied to
    it.  Identity is checked in both directions: cost 0 iff the permuted
    slot vectors coincide (within ``tol``).
    """
    n_items = len(sample)
    if n_items == 0:
        return MetricAxiomReport()
    sizes = {g.n for g, _ in sample}
    if len(sizes) != 1:
        raise SizeMismatchError(f"sample mixes graph sizes {sorted(sizes)}")

    vecs = [permuted_slots(g, p) for g, p in sample]
    c = np.empty((n_items, n_items))
    for a, b in product(range(n_items), repeat=2):
        c[a, b] = np.sum(cost.elementwise(vecs[a], vecs[b]))

    flags = {"identity": True, "positivity": True, "symmetry": True, "triangle": True}
    witness = None

    def fail(axiom: str, *ids: int) -> None:
        nonlocal witness
        flags[axiom] = False
        if witness is None:
            witness = (axiom, tuple(sample[k] for k in ids))

    for a, b in product(range(n_items), repeat=2):
        same = bool(np.max(np.abs(vecs[a] - vecs[b])) <= tol)
        if flags["identity"] and (abs(c[a, b]) <= tol) != same:
            fail("identity", a, b)
        if flags["positivity"] and c[a, b] < -tol:
            fail("positivity", a, b)
        if flags["symmetry"] and abs(c[a, b] - c[b, a]) > tol:
            fail("symmetry", a, b)
    if flags["triangle"]:
        # c[a, b] <= c[a, k] + c[k, b] for every k, vectorised over k
        for a, b in product(range(n_items), repeat=2):
            excess = c[a, b] - (c[a, :] + c[:, b])
            k = int(np.argmax(excess))
            if excess[k] > tol:
                fail("triangle", a, k, b)
                break

    return MetricAxiomReport(
        identity_ok=flags["identity"], positivity_ok=flags["positivity"],
        symmetry_ok=flags["symmetry"], triangle_ok=flags["triangle"],
        counterexample=witness)
