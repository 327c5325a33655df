"""Brambles: families of connected vertex sets that pairwise touch.

Two touching notions are supported.  Sets A, B touch weakly when they share a
vertex or some edge joins them; they touch strongly when some edge joins a
vertex of A to a distinct vertex of B.  Strong touching is required of every
pair including A with itself, so every member of a strong bramble spans an
edge (equivalently, has at least two vertices).

The order of a bramble is the minimum size of a vertex set meeting every
member.  The bramble number is the maximum order over all brambles; it is
computed here directly from maximal families, never via a width parameter,
so the two routes stay independently checkable.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, List, Literal, Optional, Sequence, Tuple

from ._bits import bits_of, is_connected_mask, neighbors_mask
from .errors import CapacityError, CertificateError
from .graphs import Graph, VertexSet

Kind = Literal["weak", "strong"]

DEFAULT_CANDIDATE_CAP = 1 << 20
DEFAULT_VISIT_CAP = 1_000_000


@dataclass(frozen=True)
class BrambleFamily:
    host_n: int
    members: Tuple[VertexSet, ...]
    kind: Kind

    def member_masks(self) -> Tuple[int, ...]:
        return tuple(s.mask for s in self.members)


def _touch_mask(adj: Sequence[int], a: int, b: int, strong: bool) -> bool:
    if strong:
        return bool(neighbors_mask(adj, a) & b)
    return bool((a | neighbors_mask(adj, a)) & b)


def touches(G: Graph, A: VertexSet, B: VertexSet, *, kind: Kind = "weak") -> bool:
    """Whether A and B touch in G under the given notion.

    With kind="strong" and A == B this asks for an internal edge.
    """
    if kind not in ("weak", "strong"):
        raise ValueError(f"kind must be 'weak' or 'strong', got {kind!r}")
    if A.host_n != G.n or B.host_n != G.n:
        raise ValueError("vertex sets address a different host order")
    return _touch_mask(G.adj_masks(), A.mask, B.mask, kind == "strong")


def validate_bramble(G: Graph, family: BrambleFamily) -> None:
    """Check every defining property; raise CertificateError on the first
    violation."""
    if family.kind not in ("weak", "strong"):
        raise CertificateError(f"unknown touching kind {family.kind!r}")
    if family.host_n != G.n:
        raise CertificateError(f"family host order {family.host_n} != graph order {G.n}")
    if not family.members:
        raise CertificateError("bramble has no members")
    adj = G.adj_masks()
    strong = family.kind == "strong"
    masks = family.member_masks()
    if len(set(masks)) != len(masks):
        raise CertificateError("bramble members are not distinct")
    for i, s in enumerate(family.members):
        if s.host_n != G.n:
            raise CertificateError(f"member {i} addresses a host of order {s.host_n}")
        if s.mask == 0:
            raise CertificateError(f"member {i} is empty")
        if not is_connected_mask(adj, s.mask):
            raise CertificateError(f"member {i} is not connected")
        if strong and not (neighbors_mask(adj, s.mask) & s.mask):
            raise CertificateError(f"member {i} spans no edge")
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not _touch_mask(adj, masks[i], masks[j], strong):
                raise CertificateError(f"members {i} and {j} do not touch ({family.kind})")


def is_valid_bramble(G: Graph, family: BrambleFamily) -> bool:
    try:
        validate_bramble(G, family)
    except CertificateError:
        return False
    return True


def _connected_set_masks(
    G: Graph, *, max_size: Optional[int] = None, max_sets: int = DEFAULT_CANDIDATE_CAP
) -> List[int]:
    """All nonempty connected vertex sets (of size <= max_size) as bitmasks,
    sorted by (size, member order)."""
    adj = G.adj_masks()
    cap_size = G.n if max_size is None else min(max_size, G.n)
    if cap_size < 1:
        raise ValueError(f"max_size must be >= 1, got {max_size}")
    out: List[int] = []

    def rec(S: int, size: int, ext: int, X: int, region: int):
        out.append(S)
        if len(out) > max_sets:
            raise CapacityError(
                f"more than {max_sets} connected sets; lower max_size or the graph order"
            )
        if size == cap_size:
            return
        while ext:
            vbit = ext & -ext
            ext ^= vbit
            v = vbit.bit_length() - 1
            new_s = S | vbit
            new_ext = (ext | (adj[v] & region)) & ~new_s & ~X
            rec(new_s, size + 1, new_ext, X, region)
            X |= vbit

    for r in range(G.n):
        rbit = 1 << r
        region = ((1 << G.n) - 1) & ~(rbit - 1)
        rec(rbit, 1, adj[r] & region & ~rbit, 0, region)
    out.sort(key=lambda s: (s.bit_count(), tuple(bits_of(s))))
    return out


def enumerate_connected_sets(
    G: Graph, *, max_size: Optional[int] = None, max_sets: int = DEFAULT_CANDIDATE_CAP
) -> List[VertexSet]:
    """Every nonempty vertex set inducing a connected subgraph, size at most
    ``max_size`` (default: no limit), in (size, lexicographic) order.

    Raises CapacityError past ``max_sets`` enumerated sets.
    """
    return [
        VertexSet.from_mask(G.n, s)
        for s in _connected_set_masks(G, max_size=max_size, max_sets=max_sets)
    ]


def min_hitting_set(members: Sequence[int], *, upper_bound: Optional[int] = None) -> int:
    """Exact minimum size of a vertex set intersecting every member mask.

    Branch and bound on the smallest unhit member.  With ``upper_bound`` the
    return value is min(true value, upper_bound + 1), allowing early exit.
    """
    union = 0
    for m in members:
        union |= m
    best = union.bit_count()
    if upper_bound is not None:
        best = min(best, upper_bound + 1)

    def rec(unhit: List[int], size: int):
        nonlocal best
        if size >= best:
            return
        if not unhit:
            best = size
            return
        target = min(unhit, key=lambda m: m.bit_count())
        for v in bits_of(target):
            rec([m for m in unhit if not (m >> v & 1)], size + 1)

    rec(list(members), 0)
    return best


def hitting_number(G: Graph, family: BrambleFamily) -> int:
    """The order of a bramble: minimum size of a set meeting every member."""
    if family.host_n != G.n:
        raise ValueError("family host order differs from graph order")
    return min_hitting_set(family.member_masks())


class BrambleSearch:
    """Candidate connected sets of a host plus the machinery to enumerate
    maximal touching families and answer hitting-set queries on them.

    Families are represented as bitmasks over the candidate index space.
    """

    def __init__(
        self,
        G: Graph,
        kind: Kind = "weak",
        *,
        max_size: Optional[int] = None,
        max_candidates: int = DEFAULT_CANDIDATE_CAP,
    ):
        if kind not in ("weak", "strong"):
            raise ValueError(f"kind must be 'weak' or 'strong', got {kind!r}")
        self.graph = G
        self.kind: Kind = kind
        adj = G.adj_masks()
        strong = kind == "strong"
        cands = _connected_set_masks(G, max_size=max_size, max_sets=max_candidates)
        if strong:
            cands = [s for s in cands if neighbors_mask(adj, s) & s]
        self.cands: List[int] = cands
        m = len(cands)
        # contains[v]: candidates containing v; touching rows come from
        # big-integer unions over the reach of each candidate
        contains = [0] * G.n
        for j, cj in enumerate(cands):
            bit = 1 << j
            for v in bits_of(cj):
                contains[v] |= bit
        rows = [0] * m
        for i, si in enumerate(cands):
            reach = neighbors_mask(adj, si) if strong else si | neighbors_mask(adj, si)
            row = 0
            for v in bits_of(reach):
                row |= contains[v]
            rows[i] = row & ~(1 << i)
        self.rows: List[int] = rows
        # disj[s] = candidates avoiding every vertex of subset mask s
        full_fam = (1 << m) - 1
        avoid = [full_fam] * G.n
        for j, cj in enumerate(cands):
            bit = 1 << j
            for v in bits_of(cj):
                avoid[v] &= ~bit
        disj = [0] * (1 << G.n)
        disj[0] = full_fam
        for s in range(1, 1 << G.n):
            low = s & -s
            disj[s] = disj[s ^ low] & avoid[low.bit_length() - 1]
        self._disj = disj
        self._by_size = sorted(range(1 << G.n), key=lambda s: (s.bit_count(), s))

    def family_masks(self, fam: int) -> List[int]:
        return [self.cands[i] for i in bits_of(fam)]

    def family(self, fam: int) -> BrambleFamily:
        n = self.graph.n
        members = tuple(VertexSet.from_mask(n, s) for s in self.family_masks(fam))
        return BrambleFamily(n, members, self.kind)

    def min_hitting(self, fam: int, *, at_most: Optional[int] = None) -> Optional[int]:
        """A minimum hitting set for the family, as a vertex mask; None when
        every hitting set is larger than ``at_most`` (if given)."""
        disj = self._disj
        for s in self._by_size:
            if at_most is not None and s.bit_count() > at_most:
                return None
            if not (disj[s] & fam):
                return s
        return None

    def _degeneracy_order(self) -> List[int]:
        """Repeatedly remove a minimum-degree vertex of the touching graph,
        via a bucket queue with lazy entries; fully deterministic."""
        m = len(self.cands)
        rows = self.rows
        deg = [rows[i].bit_count() for i in range(m)]
        buckets: List[List[int]] = [[] for _ in range(m + 1)]
        for i in range(m - 1, -1, -1):
            buckets[deg[i]].append(i)
        alive = (1 << m) - 1
        order: List[int] = []
        d = 0
        while len(order) < m:
            while d <= m and not buckets[d]:
                d += 1
            v = buckets[d].pop()
            if not (alive >> v & 1) or deg[v] != d:
                continue
            alive &= ~(1 << v)
            order.append(v)
            for u in bits_of(rows[v] & alive):
                deg[u] -= 1
                buckets[deg[u]].append(u)
                if deg[u] < d:
                    d = deg[u]
        return order

    def enumerate_maximal(
        self,
        visit: Callable[[int], None],
        *,
        max_visits: int = DEFAULT_VISIT_CAP,
        prune: Optional[Callable[[int], bool]] = None,
    ) -> None:
        """Call ``visit`` on every maximal touching family (as an index
        bitmask): outer loop in degeneracy order, pivoting inside, so the
        output order is deterministic.

        ``prune(fam)`` may declare the union R | P of a search node useless,
        skipping the whole subtree.  Raises CapacityError past ``max_visits``
        search nodes; already-visited families stand.
        """
        rows = self.rows
        m = len(self.cands)
        if not m:
            return
        nodes = 0
        # recursion depth tracks the family being built, up to m members
        old_limit = sys.getrecursionlimit()
        needed = m + 500
        if needed > old_limit:
            sys.setrecursionlimit(needed)

        def bk(R: int, P: int, X: int):
            nonlocal nodes
            nodes += 1
            if nodes > max_visits:
                raise CapacityError(f"maximal-family search exceeded {max_visits} nodes")
            if not P and not X:
                visit(R)
                return
            if prune is not None and prune(R | P):
                return
            PX = P | X
            pivot = -1
            best_cover = -1
            scan = PX
            while scan:
                ubit = scan & -scan
                scan ^= ubit
                u = ubit.bit_length() - 1
                c = (P & rows[u]).bit_count()
                if c > best_cover:
                    best_cover = c
                    pivot = u
            ext = P & ~rows[pivot]
            while ext:
                vbit = ext & -ext
                ext ^= vbit
                v = vbit.bit_length() - 1
                bk(R | vbit, P & rows[v], X & rows[v])
                P &= ~vbit
                X |= vbit

        try:
            done = 0
            for v in self._degeneracy_order():
                vbit = 1 << v
                bk(vbit, rows[v] & ~done, rows[v] & done)
                done |= vbit
        finally:
            if needed > old_limit:
                sys.setrecursionlimit(old_limit)

    def majority_family(self) -> int:
        """Candidates with more than n/2 vertices: pairwise intersecting,
        hence a weak bramble whenever nonempty.  Used as a sound seed."""
        n = self.graph.n
        fam = 0
        for i, s in enumerate(self.cands):
            if 2 * s.bit_count() > n:
                fam |= 1 << i
        return fam


def maximal_brambles(
    G: Graph,
    kind: Kind = "weak",
    *,
    max_size: Optional[int] = None,
    max_candidates: int = DEFAULT_CANDIDATE_CAP,
    max_visits: int = DEFAULT_VISIT_CAP,
) -> List[BrambleFamily]:
    """Every maximal bramble of the given kind over the connected sets of
    size <= max_size, as validated families, in deterministic order."""
    search = BrambleSearch(G, kind, max_size=max_size, max_candidates=max_candidates)
    fams: List[int] = []
    search.enumerate_maximal(fams.append, max_visits=max_visits)
    out = []
    for fam in fams:
        family = search.family(fam)
        validate_bramble(G, family)
        out.append(family)
    return out


def bramble_number(
    G: Graph,
    *,
    max_candidates: int = DEFAULT_CANDIDATE_CAP,
    max_visits: int = DEFAULT_VISIT_CAP,
) -> Tuple[int, BrambleFamily, VertexSet]:
    """Maximum order over all (weak) brambles, with an extremal family and
    one of its minimum hitting sets.

    Exhaustive over maximal families: extending a bramble never lowers its
    order, so the maximum is attained at a maximal one.  Raises CapacityError
    when the search exceeds its caps.
    """
    search = BrambleSearch(G, "weak", max_candidates=max_candidates)
    best = 1
    best_fam = 1  # lone first candidate, always a bramble; order >= 1
    seed = search.majority_family()
    if seed:
        hit = search.min_hitting(seed)
        assert hit is not None
        if hit.bit_count() > best:
            best, best_fam = hit.bit_count(), seed

    def prune(fam: int) -> bool:
        return search.min_hitting(fam, at_most=best) is not None

    def visit(fam: int) -> None:
        nonlocal best, best_fam
        hit = search.min_hitting(fam)
        assert hit is not None
        if hit.bit_count() > best:
            best, best_fam = hit.bit_count(), fam

    search.enumerate_maximal(visit, max_visits=max_visits, prune=prune)
    fam = search.family(best_fam)
    validate_bramble(G, fam)
    hit = search.min_hitting(best_fam)
    assert hit is not None and hit.bit_count() == best
    return best, fam, VertexSet.from_mask(G.n, hit)
