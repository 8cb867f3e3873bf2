"""Seeded generation of weighted-graph instances.

Random numbers come from xoshiro256** (Blackman and Vigna) seeded through
splitmix64, both implemented here so the streams are reproducible in any
language:

* splitmix64: ``state += 0x9E3779B97F4A7C15``; ``z = state``;
  ``z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9``;
  ``z = (z ^ (z >> 27)) * 0x94D049BB133111EB``; output ``z ^ (z >> 31)``.
  Four consecutive outputs form the xoshiro state.
* xoshiro256**: output ``rotl(s1 * 5, 7) * 9``; ``t = s1 << 17``;
  ``s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)``.
* uniform reals: ``(x >> 11) * 2**-53``, in ``[0, 1)``.
* integers below ``k``: ``floor(uniform() * k)``.
* random permutations: Fisher-Yates, ``for i = n-1 .. 1: swap(a[i], a[below(i + 1)])``
  starting from the identity.

All arithmetic is modulo 2**64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import AttributedGraph, GraphSet, Permutation, apply_permutation

_MASK = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256:
    """xoshiro256** generator with splitmix64 seeding."""

    def __init__(self, seed: int) -> None:
        if not 0 <= seed <= _MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")
        sm = seed
        state = []
        for _ in range(4):
            sm = (sm + 0x9E3779B97F4A7C15) & _MASK
            z = sm
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
            state.append(z ^ (z >> 31))
        self.s = state

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s
        result = (_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, k: int) -> int:
        return int(self.uniform() * k)

    def permutation(self, n: int) -> Permutation:
        a = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            a[i], a[j] = a[j], a[i]
        return Permutation(tuple(a))


@dataclass(frozen=True)
class GenConfig:
    n: int
    m: int
    edge_density: float = 0.5
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be at least 1")
        if not 0.0 <= self.edge_density <= 1.0:
            raise ValueError("edge_density must lie in [0, 1]")
        if self.noise < 0.0:
            raise ValueError("noise must be nonnegative")
        if not 0 <= self.seed <= _MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _random_graph(rng: Xoshiro256, n: int, density: float) -> AttributedGraph:
    v = [rng.uniform() for _ in range(n)]
    e = np.zeros((n, n))
    for r in range(n):
        for s in range(r + 1, n):
            # both draws happen for every pair so the stream layout is fixed
            present = rng.uniform() < density
            w = rng.uniform()
            if present:
                e[r, s] = e[s, r] = w
    return AttributedGraph(np.array(v), e)


def random_weighted_graph(cfg: GenConfig) -> AttributedGraph:
    """One graph with uniform vertex weights and Erdos-Renyi edges of uniform weight."""
    return _random_graph(Xoshiro256(cfg.seed), cfg.n, cfg.edge_density)


def random_graph_set(cfg: GenConfig) -> GraphSet:
    """``cfg.m`` independent random graphs drawn from one stream."""
    rng = Xoshiro256(cfg.seed)
    return GraphSet(tuple(_random_graph(rng, cfg.n, cfg.edge_density) for _ in range(cfg.m)))


def permuted_copies(base: AttributedGraph, m: int, seed: int) -> GraphSet:
    """``m`` randomly relabelled copies of ``base``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = Xoshiro256(seed)
    return GraphSet(tuple(apply_permutation(base, rng.permutation(base.n)) for _ in range(m)))


def perturbed_family(base: AttributedGraph, cfg: GenConfig) -> GraphSet:
    """Relabelled copies of ``base`` with uniform noise in ``[-noise, noise]`` on every weight.

    Noisy weights are clipped back into ``[0, 1]``.  The noise draws for a
    copy follow its permutation draw: vertices first, then pairs ``r < s``
    row by row.  With ``noise == 0`` no noise is drawn and the result
    equals :func:`permuted_copies` for the same seed.
    """
    if cfg.n != base.n:
        raise ValueError(f"config size {cfg.n} does not match base graph size {base.n}")
    rng = Xoshiro256(cfg.seed)
    graphs = []
    for _ in range(cfg.m):
        g = apply_permutation(base, rng.permutation(base.n))
        if cfg.noise > 0.0:
            n = g.n
            v = np.array([x + (2.0 * rng.uniform() - 1.0) * cfg.noise for x in g.vertex_weights])
            e = np.zeros((n, n))
            for r in range(n):
                for s in range(r + 1, n):
                    e[r, s] = e[s, r] = g.edge_weights[r, s] + (2.0 * rng.uniform() - 1.0) * cfg.noise
            g = AttributedGraph(np.clip(v, 0.0, 1.0), np.clip(e, 0.0, 1.0))
        graphs.append(g)
    return GraphSet(tuple(graphs))


def sweep_instance(index: int, seed: int, sizes_n: tuple[int, ...] = (2, 3, 4),
                   sizes_m: tuple[int, ...] = (2, 3, 4)) -> tuple[str, GraphSet]:
    """Instance ``index`` of a deterministic verification sweep.

    Sizes cycle through every ``(n, m)`` combination.  Even indices are sets
    of independent random graphs; odd indices are noisy relabelled copies of
    one random base graph, which keeps the family close to a zero-cost
    optimum.
    """
    n = sizes_n[index % len(sizes_n)]
    m = sizes_m[(index // len(sizes_n)) % len(sizes_m)]
    sub_seed = Xoshiro256(seed ^ (index * 0x9E3779B97F4A7C15 & _MASK)).next_u64()
    if index % 2 == 0:
        gs = random_graph_set(GenConfig(n=n, m=m, edge_density=0.6, seed=sub_seed))
    else:
        base = random_weighted_graph(GenConfig(n=n, m=1, edge_density=0.6, seed=sub_seed))
        gs = perturbed_family(base, GenConfig(n=n, m=m, edge_density=0.6, noise=0.15,
                                              seed=(sub_seed + 1) & _MASK))
    return f"inst-{index:05d}-n{n}-m{m}", gs
