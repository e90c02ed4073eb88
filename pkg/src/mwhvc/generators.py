"""Deterministic instance generators.

Randomness comes from :class:`SplitMix64` only, never from the platform RNG,
so a (kind, sizes, seed) triple names the same instance everywhere.  The
mixer constants are those of Steele, Lea and Flood's SplitMix64::

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all modulo 2**64.  Bounded integers use rejection sampling, so they are
exactly uniform.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ParameterError
from .hypergraph import Hypergraph, SetSystem

__all__ = [
    "SplitMix64",
    "GenSpec",
    "generate",
    "gen_star",
    "gen_cycle",
    "gen_clique",
    "gen_random_uniform",
    "gen_random_rank",
    "gen_set_cover_random",
]

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def sample(self, n: int, k: int) -> list[int]:
        """Uniform ``k``-subset of ``range(n)`` (partial Fisher-Yates), sorted."""
        pool = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])


def gen_star(delta: int, center_weight: int = 1, leaf_weight: int = 1, f: int = 2) -> Hypergraph:
    """Vertex 0 lies in all ``delta`` edges; each edge adds ``f - 1`` private leaves.

    With the default ``f = 2`` edge ``i`` is ``{0, i + 1}``.
    """
    if delta < 1 or f < 1:
        raise ParameterError("star needs delta >= 1 and f >= 1")
    petal = f - 1
    return Hypergraph(
        n=1 + delta * petal,
        weights=(center_weight,) + (leaf_weight,) * (delta * petal),
        edges=tuple((0, *range(1 + i * petal, 1 + (i + 1) * petal)) for i in range(delta)),
    )


def gen_cycle(n: int, weights=None) -> Hypergraph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Hypergraph(n, tuple(weights or (1,) * n), tuple((i, (i + 1) % n) for i in range(n)))


def gen_clique(n: int, weights=None) -> Hypergraph:
    if n < 3:
        raise ParameterError("clique needs n >= 3")
    return Hypergraph(n, tuple(weights or (1,) * n), tuple(combinations(range(n), 2)))


def gen_random_uniform(n: int, m: int, f: int, weight_max: int, seed: int) -> Hypergraph:
    """``m`` independent uniform ``f``-subsets of ``n`` vertices."""
    if f > n:
        raise ParameterError(f"edge size {f} exceeds vertex count {n}")
    if m < 1 or f < 1 or weight_max < 1:
        raise ParameterError("need m, f, weight_max >= 1")
    rng = SplitMix64(seed)
    weights = tuple(rng.between(1, weight_max) for _ in range(n))
    edges = tuple(tuple(rng.sample(n, f)) for _ in range(m))
    return Hypergraph(n, weights, edges)


def gen_random_rank(n: int, m: int, f: int, weight_max: int, seed: int) -> Hypergraph:
    """Like :func:`gen_random_uniform` but edge sizes are uniform in ``[1, f]``.

    Edge 0 always has size ``f``, so the rank is exactly ``f``.
    """
    if f > n:
        raise ParameterError(f"edge size {f} exceeds vertex count {n}")
    if m < 1 or f < 1 or weight_max < 1:
        raise ParameterError("need m, f, weight_max >= 1")
    rng = SplitMix64(seed)
    weights = tuple(rng.between(1, weight_max) for _ in range(n))
    sizes = [f] + [rng.between(1, f) for _ in range(m - 1)]
    edges = tuple(tuple(rng.sample(n, k)) for k in sizes)
    return Hypergraph(n, weights, edges)


def gen_set_cover_random(n_elements: int, m: int, f: int, weight_max: int, seed: int) -> SetSystem:
    """Random set system where every element lies in between 1 and ``f`` subsets."""
    if f > m:
        raise ParameterError(f"frequency {f} exceeds subset count {m}")
    rng = SplitMix64(seed)
    weights = [rng.between(1, weight_max) for _ in range(m)]
    contents: list[set[int]] = [set() for _ in range(m)]
    for x in range(n_elements):
        for i in rng.sample(m, rng.between(1, f)):
            contents[i].add(x)
    return SetSystem(n_elements, tuple((w, frozenset(c)) for w, c in zip(weights, contents)))


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int = 0
    m: int = 0
    f: int = 2
    delta: int = 0
    weight_max: int = 1
    seed: int = 0
    center_weight: int = 1
    leaf_weight: int = 1

    def describe(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.__dict__.items())


def generate(spec: GenSpec):
    """Dispatch on ``spec.kind``; ``set_cover_random`` yields a :class:`SetSystem`."""
    if spec.kind == "star":
        return gen_star(spec.delta, spec.center_weight, spec.leaf_weight, spec.f)
    if spec.kind == "cycle":
        return gen_cycle(spec.n)
    if spec.kind == "clique":
        return gen_clique(spec.n)
    if spec.kind in ("random", "random_uniform"):
        return gen_random_uniform(spec.n, spec.m, spec.f, spec.weight_max, spec.seed)
    if spec.kind == "random_rank":
        return gen_random_rank(spec.n, spec.m, spec.f, spec.weight_max, spec.seed)
    if spec.kind == "set_cover_random":
        return gen_set_cover_random(spec.n, spec.m, spec.f, spec.weight_max, spec.seed)
    raise ParameterError(f"unknown instance kind {spec.kind!r}")
