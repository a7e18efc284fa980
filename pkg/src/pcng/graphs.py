"""Labeled graph enumeration on edge bitmasks."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .core import pair_index, pair_list


def mask_is_connected(n: int, mask: int) -> bool:
    nbrs = [0] * n
    for k, (u, v) in enumerate(pair_list(n)):
        if mask >> k & 1:
            nbrs[u] |= 1 << v
            nbrs[v] |= 1 << u
    seen = frontier = 1
    while frontier:
        new = 0
        f = frontier
        while f:
            low = f & -f
            new |= nbrs[low.bit_length() - 1]
            f ^= low
        frontier = new & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


@lru_cache(maxsize=16)
def connected_graphs(n: int) -> tuple[int, ...]:
    """All connected labeled graphs on ``n`` vertices, as edge masks.

    Ordered by edge count, then by mask value.
    """
    m = n * (n - 1) // 2
    masks = [mask for mask in range(1 << m) if mask_is_connected(n, mask)]
    masks.sort(key=lambda x: (bin(x).count("1"), x))
    return tuple(masks)


@lru_cache(maxsize=16)
def _permutation_maps(n: int) -> tuple[tuple[int, ...], ...]:
    """For each vertex permutation, where each pair bit moves to."""
    index = pair_index(n)
    pairs = pair_list(n)
    return tuple(tuple(index[p[u]][p[v]] for u, v in pairs)
                 for p in itertools.permutations(range(n)))


def permute_mask(mask: int, bit_map: tuple[int, ...]) -> int:
    out = 0
    for k, target in enumerate(bit_map):
        if mask >> k & 1:
            out |= 1 << target
    return out


def canonical_mask(n: int, mask: int) -> int:
    """Smallest relabeling of ``mask``; equal iff the graphs are isomorphic."""
    return min(permute_mask(mask, bit_map) for bit_map in _permutation_maps(n))
