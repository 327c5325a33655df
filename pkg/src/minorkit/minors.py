"""Clique-minor and pattern-minor models: exact search and verification.

A minor model assigns one branch set per pattern vertex.  Branch sets must be
nonempty, pairwise disjoint, and connected in the host, and every pattern
edge must be realized by at least one host edge between the two branch sets.
The breadth of a model is the size of its largest branch set; searches can be
capped at a given breadth.

The search is exhaustive and canonical: branch sets are rooted at their
minimum vertex, clique slots take roots in increasing order, and candidates
are extended in a fixed duplicate-free order, so the first model found for a
given host is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

from ._bits import bits_of, component, edges_within, is_connected_mask, neighbors_mask
from .errors import CertificateError
from .graphs import Graph, VertexSet


@dataclass(frozen=True)
class CliqueOrder:
    """Pattern descriptor: the complete graph on ``order`` vertices."""

    order: int


@dataclass(frozen=True)
class PatternGraph:
    """Pattern descriptor: an arbitrary graph, one slot per vertex."""

    graph: Graph


Pattern = Union[CliqueOrder, PatternGraph]


@dataclass(frozen=True)
class MinorModel:
    """A minor model in a host on ``host_n`` vertices.

    ``branch_sets[i]`` is the branch set of pattern vertex i.
    """

    host_n: int
    branch_sets: Tuple[VertexSet, ...]
    pattern: Pattern

    @property
    def order(self) -> int:
        return len(self.branch_sets)

    @property
    def breadth(self) -> int:
        return max((len(b) for b in self.branch_sets), default=0)

    def branch_masks(self) -> Tuple[int, ...]:
        return tuple(b.mask for b in self.branch_sets)


def _pattern_slots(pattern: Pattern) -> int:
    if isinstance(pattern, CliqueOrder):
        return pattern.order
    return pattern.graph.n


def _pattern_edges(pattern: Pattern, k: int) -> List[Tuple[int, int]]:
    if isinstance(pattern, CliqueOrder):
        return [(i, j) for i in range(k) for j in range(i + 1, k)]
    return list(pattern.graph.edges())


def verify_minor_model(G: Graph, model: MinorModel, *, breadth: Optional[int] = None) -> None:
    """Check every defining property of a minor model; raise CertificateError
    naming the first violated one.
    """
    if model.host_n != G.n:
        raise CertificateError(f"model host order {model.host_n} != graph order {G.n}")
    k = _pattern_slots(model.pattern)
    if len(model.branch_sets) != k:
        raise CertificateError(
            f"pattern has {k} vertices but model has {len(model.branch_sets)} branch sets"
        )
    if k < 0:
        raise CertificateError("pattern order cannot be negative")
    # k == 0 (the empty clique) is the degenerate model with no branch sets
    adj = G.adj_masks()
    seen = 0
    for i, b in enumerate(model.branch_sets):
        if b.host_n != G.n:
            raise CertificateError(f"branch set {i} addresses a host of order {b.host_n}")
        if b.mask == 0:
            raise CertificateError(f"branch set {i} is empty")
        if b.mask & seen:
            j = next(
                jj for jj in range(i) if model.branch_sets[jj].mask & b.mask
            )
            raise CertificateError(f"branch sets {j} and {i} overlap")
        seen |= b.mask
        if not is_connected_mask(adj, b.mask):
            raise CertificateError(f"branch set {i} is not connected")
        if breadth is not None and len(b) > breadth:
            raise CertificateError(
                f"branch set {i} has {len(b)} vertices, above the breadth cap {breadth}"
            )
    masks = model.branch_masks()
    for i, j in _pattern_edges(model.pattern, k):
        if not (neighbors_mask(adj, masks[i]) & masks[j]):
            raise CertificateError(
                f"no host edge between branch sets {i} and {j}"
            )


def is_valid_minor_model(G: Graph, model: MinorModel, *, breadth: Optional[int] = None) -> bool:
    try:
        verify_minor_model(G, model, breadth=breadth)
    except CertificateError:
        return False
    return True


# ---------------------------------------------------------------------------
# search internals


def _degree_order(G: Graph) -> List[int]:
    return sorted(range(G.n), key=lambda v: (-G.degree(v), v))


def _relabeled_masks(G: Graph, order: Sequence[int]) -> List[int]:
    pos = [0] * G.n
    for i, v in enumerate(order):
        pos[v] = i
    masks = [0] * G.n
    for i, v in enumerate(order):
        m = 0
        for w in bits_of(G.adj_mask(v)):
            m |= 1 << pos[w]
        masks[i] = m
    return masks


def _grow_sets(
    adj: Sequence[int],
    root: int,
    region: int,
    budget: int,
    need: Tuple[int, ...],
    accept: Callable[[int], Optional[object]],
):
    """Enumerate connected sets S with root = min S inside ``region``.

    Sets are visited smallest-first along each branch, each exactly once.
    ``accept`` is called on every S of size <= budget that intersects all the
    ``need`` masks; the first non-None result aborts the enumeration.
    """
    root_bit = 1 << root

    def rec(S: int, size: int, ext: int, X: int, missing: Tuple[int, ...]):
        if not missing:
            res = accept(S)
            if res is not None:
                return res
        if size == budget:
            return None
        if missing and not ext:
            return None
        while ext:
            vbit = ext & -ext
            ext ^= vbit
            v = vbit.bit_length() - 1
            new_s = S | vbit
            new_ext = (ext | (adj[v] & region)) & ~new_s & ~X
            new_missing = tuple(mm for mm in missing if not (mm & vbit))
            res = rec(new_s, size + 1, new_ext, X, new_missing)
            if res is not None:
                return res
            X |= vbit
        return None

    start_missing = tuple(mm for mm in need if not (mm & root_bit))
    return rec(root_bit, 1, adj[root] & region & ~root_bit, 0, start_missing)


def _search_clique_model(adj: Sequence[int], t: int, breadth: Optional[int]) -> Optional[List[int]]:
    """First canonical K_t model in the graph given by adjacency masks, or
    None if there is none (the search is exhaustive)."""
    n = len(adj)
    if t > n:
        return None
    if t * (t - 1) // 2 > edges_within(adj, (1 << n) - 1):
        return None
    built: List[int] = []
    built_nb: List[int] = []

    def slot(avail: int) -> Optional[List[int]]:
        rem = t - len(built)
        if rem == 0:
            return list(built)
        if avail.bit_count() < rem:
            return None
        a = avail
        while a:
            rbit = a & -a
            a ^= rbit
            r = rbit.bit_length() - 1
            region = avail & ~(rbit - 1)
            comp = component(adj, r, region)
            csize = comp.bit_count()
            if csize < rem:
                continue
            if rem >= 2 and edges_within(adj, comp) < rem * (rem - 1) // 2:
                continue
            if any((nb & comp).bit_count() < rem for nb in built_nb):
                continue
            budget = csize - (rem - 1)
            if breadth is not None and budget > breadth:
                budget = breadth

            def accept(S: int, comp=comp) -> Optional[List[int]]:
                built.append(S)
                built_nb.append(neighbors_mask(adj, S))
                res = slot(comp & ~S)
                built.pop()
                built_nb.pop()
                return res

            res = _grow_sets(adj, r, comp, budget, tuple(built_nb), accept)
            if res is not None:
                return res
        return None

    return slot((1 << n) - 1)


def _search_pattern_model(
    adj: Sequence[int], H: Graph, breadth: Optional[int]
) -> Optional[List[int]]:
    """First model of H in the graph given by adjacency masks, or None.

    Returned list is indexed by H vertex.
    """
    n = len(adj)
    k = H.n
    if k > n or H.m > edges_within(adj, (1 << n) - 1):
        return None
    slots = sorted(range(k), key=lambda v: (-H.degree(v), v))
    slot_pos = {h: i for i, h in enumerate(slots)}
    required: List[List[int]] = []
    for i, h in enumerate(slots):
        required.append([slot_pos[w] for w in bits_of(H.adj_mask(h)) if slot_pos[w] < i])
    built: List[int] = []
    built_nb: List[int] = []
    full = (1 << n) - 1

    def slot(used: int) -> Optional[List[int]]:
        i = len(built)
        if i == k:
            out = [0] * k
            for pos, h in enumerate(slots):
                out[h] = built[pos]
            return out
        rem = k - i
        avail = full & ~used
        if avail.bit_count() < rem:
            return None
        need = tuple(built_nb[j] for j in required[i])
        a = avail
        while a:
            rbit = a & -a
            a ^= rbit
            r = rbit.bit_length() - 1
            region = avail & ~(rbit - 1)
            comp = component(adj, r, region)
            budget = min(comp.bit_count(), avail.bit_count() - (rem - 1))
            if breadth is not None and budget > breadth:
                budget = breadth
            if any(not (nb & comp) for nb in need):
                continue

            def accept(S: int, used=used) -> Optional[List[int]]:
                built.append(S)
                built_nb.append(neighbors_mask(adj, S))
                res = slot(used | S)
                built.pop()
                built_nb.pop()
                return res

            res = _grow_sets(adj, r, comp, budget, need, accept)
            if res is not None:
                return res
        return None

    return slot(0)


def _masks_to_model(
    G: Graph, masks: Sequence[int], order: Sequence[int], pattern: Pattern
) -> MinorModel:
    sets = []
    for mask in masks:
        members = [order[i] for i in bits_of(mask)]
        sets.append(VertexSet(G.n, members))
    if isinstance(pattern, CliqueOrder):
        sets.sort(key=lambda s: s.mask & -s.mask)
    return MinorModel(G.n, tuple(sets), pattern)


# ---------------------------------------------------------------------------
# public search API


def find_clique_minor(G: Graph, t: int, *, breadth: Optional[int] = None) -> Optional[MinorModel]:
    """A verified K_t minor model of G, or None if G has no K_t minor
    (respecting the breadth cap when one is given)."""
    if t < 1:
        raise ValueError(f"clique order must be >= 1, got {t}")
    if breadth is not None and breadth < 1:
        raise ValueError(f"breadth cap must be >= 1, got {breadth}")
    order = _degree_order(G)
    adj = _relabeled_masks(G, order)
    masks = _search_clique_model(adj, t, breadth)
    if masks is None:
        return None
    model = _masks_to_model(G, masks, order, CliqueOrder(t))
    verify_minor_model(G, model, breadth=breadth)
    return model


def has_clique_minor(G: Graph, t: int, *, breadth: Optional[int] = None) -> bool:
    return find_clique_minor(G, t, breadth=breadth) is not None


def find_minor(G: Graph, H: Graph, *, breadth: Optional[int] = None) -> Optional[MinorModel]:
    """A verified model of H in G, or None if G has no H minor.  Isolated
    vertices of H still get (singleton-capable) branch sets."""
    if breadth is not None and breadth < 1:
        raise ValueError(f"breadth cap must be >= 1, got {breadth}")
    order = _degree_order(G)
    adj = _relabeled_masks(G, order)
    masks = _search_pattern_model(adj, H, breadth)
    if masks is None:
        return None
    model = _masks_to_model(G, masks, order, PatternGraph(H))
    verify_minor_model(G, model, breadth=breadth)
    return model


def has_minor(G: Graph, H: Graph, *, breadth: Optional[int] = None) -> bool:
    return find_minor(G, H, breadth=breadth) is not None


def _greedy_elimination_width(G: Graph) -> int:
    """Width of the min-degree greedy elimination order.

    This bounds treewidth from above, and a K_t minor forces treewidth at
    least t - 1, so no clique minor can exceed the returned width plus one.
    Used only to stop the upward climb early; every reported order is still
    witnessed by a verified model.
    """
    adj = list(G.adj_masks())
    alive = (1 << G.n) - 1
    width = 0
    while alive:
        v = min(bits_of(alive), key=lambda u: (adj[u] & alive).bit_count())
        nb = adj[v] & alive & ~(1 << v)
        width = max(width, nb.bit_count())
        for u in bits_of(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
    return width


def _greedy_clique_size(G: Graph) -> int:
    best = 1
    for start in range(G.n):
        clique_mask = 1 << start
        size = 1
        cand = G.adj_mask(start)
        while cand:
            v = max(bits_of(cand), key=lambda u: (G.adj_mask(u) & cand).bit_count())
            clique_mask |= 1 << v
            size += 1
            cand &= G.adj_mask(v)
        if size > best:
            best = size
    return best


def hadwiger_number(G: Graph) -> Tuple[int, MinorModel]:
    """The largest t with a K_t minor, plus a verified witness model."""
    t = _greedy_clique_size(G)
    model = find_clique_minor(G, t)
    assert model is not None
    cap = min(G.n, _greedy_elimination_width(G) + 1)
    while t < cap:
        nxt = find_clique_minor(G, t + 1)
        if nxt is None:
            break
        t += 1
        model = nxt
    return t, model


def max_clique_minor_bounded(G: Graph, breadth: int) -> Tuple[int, MinorModel]:
    """The largest t with a K_t minor all of whose branch sets have at most
    ``breadth`` vertices, plus a verified witness model."""
    if breadth < 1:
        raise ValueError(f"breadth cap must be >= 1, got {breadth}")
    t = _greedy_clique_size(G)
    model = find_clique_minor(G, t, breadth=breadth)
    assert model is not None
    cap = min(G.n, _greedy_elimination_width(G) + 1)
    while t < cap:
        nxt = find_clique_minor(G, t + 1, breadth=breadth)
        if nxt is None:
            break
        t += 1
        model = nxt
    return t, model
