"""Bitmask helpers shared by the search modules.

Vertex sets are plain ints: bit v set means vertex v is in the set.
"""

from __future__ import annotations

from typing import Iterator, List, Sequence


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def neighbors_mask(adj: Sequence[int], mask: int) -> int:
    """Union of the neighborhoods of the vertices in ``mask``."""
    out = 0
    for v in bits_of(mask):
        out |= adj[v]
    return out


def component(adj: Sequence[int], start: int, allowed: int) -> int:
    """Connected component of ``start`` inside the induced subgraph on ``allowed``.

    ``start`` must be a vertex index with its bit set in ``allowed``.
    """
    seen = 1 << start
    frontier = seen
    while frontier:
        grow = 0
        for v in bits_of(frontier):
            grow |= adj[v]
        grow &= allowed & ~seen
        seen |= grow
        frontier = grow
    return seen


def components(adj: Sequence[int], allowed: int) -> List[int]:
    """Component masks of the induced subgraph on ``allowed``, by lowest vertex."""
    out = []
    rest = allowed
    while rest:
        v = (rest & -rest).bit_length() - 1
        comp = component(adj, v, rest)
        out.append(comp)
        rest &= ~comp
    return out


def is_connected_mask(adj: Sequence[int], mask: int) -> bool:
    """True iff ``mask`` is nonempty and induces a connected subgraph."""
    if mask == 0:
        return False
    v = (mask & -mask).bit_length() - 1
    return component(adj, v, mask) == mask


def edges_within(adj: Sequence[int], mask: int) -> int:
    """Number of edges of the induced subgraph on ``mask``."""
    total = 0
    for v in bits_of(mask):
        total += (adj[v] & mask).bit_count()
    return total // 2
