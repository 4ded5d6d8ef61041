"""Numerical semigroups: membership, Apéry sets, Frobenius numbers, Selmer's bound."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Tuple


def apery_table(gens: Iterable[int]) -> Tuple[int, ...]:
    """Apéry set of <gens> w.r.t. m = min(gens): least element in each class mod m.

    Dijkstra over residues mod m, edge r -> r + g of weight g.
    Requires gcd(gens) == 1.
    """
    gens = sorted(set(gens))
    if not gens:
        raise ValueError("empty generator set")
    if math.gcd(*gens) != 1:
        raise ValueError("Apéry table needs gcd 1; reduce the generators first")
    m = gens[0]
    steps = [g for g in gens[1:]]
    inf = None
    dist = [inf] * m
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        d, r = heapq.heappop(heap)
        if d != dist[r]:
            continue
        for g in steps:
            nd, nr = d + g, (r + g) % m
            cur = dist[nr]
            if cur is None or nd < cur:
                dist[nr] = nd
                heapq.heappush(heap, (nd, nr))
    return tuple(dist)


@dataclass(frozen=True)
class GeneratorSet:
    """Generators of a numerical semigroup, with gcd and Apéry data precomputed."""

    gens: Tuple[int, ...]
    gcd: int = field(init=False)
    reduced: Tuple[int, ...] = field(init=False)
    apery: Tuple[int, ...] = field(init=False, repr=False)

    def __init__(self, gens: Iterable[int]):
        gs = tuple(sorted(set(int(g) for g in gens)))
        if not gs:
            raise ValueError("empty generator set")
        if gs[0] < 1:
            raise ValueError("generators must be positive")
        g = math.gcd(*gs)
        red = tuple(x // g for x in gs)
        object.__setattr__(self, "gens", gs)
        object.__setattr__(self, "gcd", g)
        object.__setattr__(self, "reduced", red)
        object.__setattr__(self, "apery", apery_table(red))

    @property
    def multiplicity(self) -> int:
        return self.reduced[0]

    def __contains__(self, x: int) -> bool:
        return semigroup_contains(self, x)


def semigroup_contains(S: GeneratorSet, x: int) -> bool:
    if x < 0:
        return False
    if x % S.gcd:
        return False
    y = x // S.gcd
    return y >= S.apery[y % S.multiplicity]


def apery_set(S: GeneratorSet) -> Tuple[int, ...]:
    if S.gcd != 1:
        raise ValueError("Apéry set is defined here for gcd-1 generator sets; use S.reduced")
    return S.apery


def frobenius_number(S: GeneratorSet) -> int:
    """Largest integer outside <S>; -1 when every non-negative integer is representable."""
    if S.gcd != 1:
        raise ValueError("Frobenius number needs gcd 1")
    return max(S.apery) - S.multiplicity


def minimal_generators(S: GeneratorSet) -> Tuple[int, ...]:
    """The minimal generating system of <S> (redundant generators dropped)."""
    keep = []
    top = S.gens[-1]
    reach = 1  # bit x set <=> x in <keep>
    mask = (1 << (top + 1)) - 1
    for g in S.gens:
        if (reach >> g) & 1:
            continue
        keep.append(g)
        shift = g
        while shift <= top:
            reach |= (reach << shift) & mask
            shift <<= 1
    return tuple(keep)


def selmer_bound(S: GeneratorSet) -> int:
    """Upper bound 2*max*floor(min/n) - min on F(S), taken over the minimal generators.

    The formula is only a bound for minimal generating systems: {2, 3, 5}
    gives -2 while F = 1.  Dropping redundant generators leaves <S> and
    min(S) unchanged, so the returned value still bounds F(S).
    """
    if len(S.gens) < 2:
        raise ValueError("Selmer's bound needs at least two generators")
    if S.gcd != 1:
        raise ValueError("Selmer's bound needs gcd 1")
    mg = minimal_generators(S)
    lo, hi = mg[0], mg[-1]
    return 2 * hi * (lo // len(mg)) - lo


def count_representable(A: Iterable[int], S: GeneratorSet) -> int:
    """#(A intersect <S>), counted with multiplicity."""
    return sum(1 for a in A if semigroup_contains(S, a))
