"""Width parameters with checkable witnesses: treewidth via the exact
elimination-set dynamic program, balanced-separation number by exhaustive
sweep, and the largest square-grid minor.

The bramble number lives in ``brambles`` and is computed from maximal
families directly; comparing it against treewidth + 1 here is a test-side
cross-check, deliberately not an implementation shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

from ._bits import bits_of, component, components, neighbors_mask
from .errors import CapacityError, CertificateError
from .graphs import Graph, VertexSet, grid_graph
from .minors import MinorModel, PatternGraph, find_minor

TREEWIDTH_VERTEX_CAP = 14
SEPARATION_VERTEX_CAP = 12


@dataclass(frozen=True)
class TreeDecomposition:
    host_n: int
    bags: Tuple[VertexSet, ...]
    edges: Tuple[Tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


def verify_tree_decomposition(G: Graph, td: TreeDecomposition) -> None:
    """Check the three decomposition properties plus tree shape; raise
    CertificateError on the first violation."""
    if td.host_n != G.n:
        raise CertificateError(f"decomposition host order {td.host_n} != graph order {G.n}")
    k = len(td.bags)
    if k < 1:
        raise CertificateError("decomposition has no bags")
    for i, b in enumerate(td.bags):
        if b.host_n != G.n:
            raise CertificateError(f"bag {i} addresses a host of order {b.host_n}")
    if len(td.edges) != k - 1:
        raise CertificateError(f"{k} bags need {k - 1} tree edges, got {len(td.edges)}")
    nbr: List[List[int]] = [[] for _ in range(k)]
    for a, b in td.edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            raise CertificateError(f"tree edge ({a}, {b}) is not between two distinct bags")
        nbr[a].append(b)
        nbr[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in nbr[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != k:
        raise CertificateError("tree edges do not connect all bags")
    covered = 0
    for b in td.bags:
        covered |= b.mask
    if covered != (1 << G.n) - 1:
        v = next(u for u in range(G.n) if not covered >> u & 1)
        raise CertificateError(f"vertex {v} appears in no bag")
    for u, v in G.edges():
        need = 1 << u | 1 << v
        if not any(b.mask & need == need for b in td.bags):
            raise CertificateError(f"edge ({u}, {v}) is inside no bag")
    for v in range(G.n):
        holding = [i for i in range(k) if v in td.bags[i]]
        reach = {holding[0]}
        stack = [holding[0]]
        hold_set = set(holding)
        while stack:
            x = stack.pop()
            for y in nbr[x]:
                if y in hold_set and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if len(reach) != len(holding):
            raise CertificateError(f"bags containing vertex {v} are not connected in the tree")


def _pull_set(adj, eliminated: int, v: int) -> int:
    """Vertices outside ``eliminated`` + v adjacent to the component of v
    inside eliminated + v."""
    comp = component(adj, v, eliminated | 1 << v)
    return neighbors_mask(adj, comp) & ~comp


def treewidth(G: Graph, *, max_vertices: int = TREEWIDTH_VERTEX_CAP) -> Tuple[int, TreeDecomposition]:
    """Exact treewidth with a verified tree decomposition of that width.

    Dynamic program over elimination prefixes, exponential in n; guarded by
    ``max_vertices``.
    """
    n = G.n
    if n > max_vertices:
        raise CapacityError(f"treewidth DP on {n} vertices exceeds the cap {max_vertices}")
    adj = G.adj_masks()
    full = (1 << n) - 1
    tw = [0] * (1 << n)
    tw[0] = -1
    for S in range(1, 1 << n):
        best = n
        scan = S
        while scan:
            vbit = scan & -scan
            scan ^= vbit
            v = vbit.bit_length() - 1
            prev = S ^ vbit
            cost = tw[prev]
            pull = _pull_set(adj, prev, v).bit_count()
            if pull > cost:
                cost = pull
            if cost < best:
                best = cost
        tw[S] = best

    # walk back: the chosen vertex at S is eliminated last within S
    order: List[int] = []
    S = full
    while S:
        scan = S
        while scan:
            vbit = scan & -scan
            scan ^= vbit
            v = vbit.bit_length() - 1
            prev = S ^ vbit
            if max(tw[prev], _pull_set(adj, prev, v).bit_count()) == tw[S]:
                order.append(v)
                S = prev
                break
    order.reverse()

    position = {v: i for i, v in enumerate(order)}
    bags: List[VertexSet] = []
    pulls: List[int] = []
    eliminated = 0
    for v in order:
        pull = _pull_set(adj, eliminated, v)
        pulls.append(pull)
        bags.append(VertexSet.from_mask(n, pull | 1 << v))
        eliminated |= 1 << v
    edges: List[Tuple[int, int]] = []
    for i in range(n):
        if pulls[i]:
            parent = min(position[w] for w in bits_of(pulls[i]))
            edges.append((i, parent))
        elif i + 1 < n:
            edges.append((i, i + 1))
    td = TreeDecomposition(n, tuple(bags), tuple(edges))
    verify_tree_decomposition(G, td)
    assert td.width == tw[full]
    return tw[full], td


# ---------------------------------------------------------------------------
# balanced separations


@dataclass(frozen=True)
class Separation:
    """A balanced separation of an induced subgraph: the separator splits
    the rest of the subgraph into two sides with no edges between, each of
    size at most floor(2/3 of the subgraph order).

    At subgraph order 1 the cap is 0, so the lone vertex must sit in the
    separator; every graph therefore has separation number at least 1."""

    host_n: int
    subgraph: VertexSet
    separator: VertexSet
    side1: VertexSet
    side2: VertexSet


def _side_cap(sub_order: int) -> int:
    return (2 * sub_order) // 3


def verify_separation(G: Graph, sep: Separation) -> None:
    if sep.host_n != G.n:
        raise CertificateError(f"separation host order {sep.host_n} != graph order {G.n}")
    for name, s in (
        ("subgraph", sep.subgraph),
        ("separator", sep.separator),
        ("side1", sep.side1),
        ("side2", sep.side2),
    ):
        if s.host_n != G.n:
            raise CertificateError(f"{name} addresses a host of order {s.host_n}")
    w = sep.subgraph.mask
    if not w:
        raise CertificateError("subgraph is empty")
    parts = (sep.separator.mask, sep.side1.mask, sep.side2.mask)
    if parts[0] | parts[1] | parts[2] != w:
        raise CertificateError("separator and sides do not cover the subgraph")
    if parts[0] & parts[1] or parts[0] & parts[2] or parts[1] & parts[2]:
        raise CertificateError("separator and sides overlap")
    adj = G.adj_masks()
    if neighbors_mask(adj, parts[1]) & parts[2]:
        raise CertificateError("an edge joins the two sides")
    cap = _side_cap(w.bit_count())
    for name, mask in (("side1", parts[1]), ("side2", parts[2])):
        if mask.bit_count() > cap:
            raise CertificateError(
                f"{name} has {mask.bit_count()} vertices, above the cap {cap}"
            )


def _min_balanced_separator(adj, w: int, *, at_most: Optional[int] = None) -> Optional[Tuple[int, int, int]]:
    """Smallest balanced separator of the induced subgraph on mask w,
    as (separator, side1, side2) masks; None if every separator needs more
    than ``at_most`` vertices."""
    order = w.bit_count()
    cap = _side_cap(order)
    verts = list(bits_of(w))
    limit = order if at_most is None else min(at_most, order)
    for k in range(limit + 1):
        for combo in combinations(verts, k):
            sep_mask = 0
            for v in combo:
                sep_mask |= 1 << v
            rest = w & ~sep_mask
            comps = components(adj, rest)
            if any(c.bit_count() > cap for c in comps):
                continue
            reach = 1
            for c in comps:
                reach |= reach << c.bit_count()
            target = rest.bit_count()
            pick = None
            for s1 in range(min(cap, target) + 1):
                if reach >> s1 & 1 and target - s1 <= cap:
                    pick = s1
                    break
            if pick is None:
                continue
            side1 = 0
            got = 0
            for c in comps:
                cs = c.bit_count()
                if got + cs <= pick:
                    side1 |= c
                    got += cs
                if got == pick:
                    break
            if got != pick:
                # greedy packing missed the target; rebuild by subset scan
                side1 = _exact_side(comps, pick)
                if side1 is None:
                    continue
            return sep_mask, side1, rest & ~side1
    return None


def _exact_side(comps: List[int], target: int) -> Optional[int]:
    sizes = [c.bit_count() for c in comps]
    k = len(comps)
    for r in range(k + 1):
        for combo in combinations(range(k), r):
            if sum(sizes[i] for i in combo) == target:
                side = 0
                for i in combo:
                    side |= comps[i]
                return side
    return None


def separation_number(
    G: Graph, *, max_vertices: int = SEPARATION_VERTEX_CAP
) -> Tuple[int, Separation]:
    """min over separators, max over induced subgraphs: the smallest s such
    that every induced subgraph has a balanced separator of size s.

    Returns the value with a witness: an optimal separation of a subgraph
    that needs s separator vertices.
    """
    n = G.n
    if n > max_vertices:
        raise CapacityError(f"separation sweep on {n} vertices exceeds the cap {max_vertices}")
    adj = G.adj_masks()
    best = -1
    best_parts: Optional[Tuple[int, int, int, int]] = None
    for w in range(1, 1 << n):
        if _min_balanced_separator(adj, w, at_most=best) is not None:
            continue
        got = _min_balanced_separator(adj, w, at_most=None)
        assert got is not None
        sep_mask, s1, s2 = got
        size = sep_mask.bit_count()
        if size > best:
            best = size
            best_parts = (w, sep_mask, s1, s2)
    assert best_parts is not None
    w, sep_mask, s1, s2 = best_parts
    witness = Separation(
        n,
        VertexSet.from_mask(n, w),
        VertexSet.from_mask(n, sep_mask),
        VertexSet.from_mask(n, s1),
        VertexSet.from_mask(n, s2),
    )
    verify_separation(G, witness)
    return best, witness


# ---------------------------------------------------------------------------
# square-grid minors


def max_grid_minor(G: Graph, *, max_side: Optional[int] = None) -> Tuple[int, MinorModel]:
    """Largest k such that G has a k by k grid minor, with a witness model.

    Every graph (n >= 1) contains the 1 by 1 grid.
    """
    k = 1
    model = find_minor(G, grid_graph(1))
    assert model is not None
    while max_side is None or k < max_side:
        if (k + 1) * (k + 1) > G.n:
            break
        nxt = find_minor(G, grid_graph(k + 1))
        if nxt is None:
            break
        k += 1
        model = nxt
    return k, model


# ---------------------------------------------------------------------------
# cross-parameter reporting


@dataclass(frozen=True)
class ParamReport:
    """All width-style parameters of one graph, each with its certificate,
    plus the two structural cross-checks.

    ``duality_holds`` records bramble order == treewidth + 1; the two sides
    come from independent computations, so this is a genuine check and not a
    restatement.
    """

    graph: Graph
    n: int
    m: int
    hadwiger: int
    hadwiger_model: MinorModel
    fractional: "HadwigerValue"
    treewidth: int
    decomposition: TreeDecomposition
    bramble_order: int
    bramble: "BrambleFamily"
    hitting_set: VertexSet
    separation: int
    separation_witness: Separation
    grid_side: int
    grid_model: MinorModel
    grid_le_treewidth: bool
    duality_holds: bool


def comparability_report(graphs) -> List[ParamReport]:
    """Compute the full parameter vector for each graph, certificates and
    all.  Raises CapacityError when any graph is past the relevant caps."""
    from .brambles import bramble_number
    from .fractional import fractional_hadwiger
    from .minors import hadwiger_number

    out: List[ParamReport] = []
    for G in graphs:
        h, hmodel = hadwiger_number(G)
        hf = fractional_hadwiger(G, "weak")
        tw, td = treewidth(G)
        bn, fam, hit = bramble_number(G)
        sp, sw = separation_number(G)
        gs, gm = max_grid_minor(G)
        out.append(
            ParamReport(
                graph=G,
                n=G.n,
                m=G.m,
                hadwiger=h,
                hadwiger_model=hmodel,
                fractional=hf,
                treewidth=tw,
                decomposition=td,
                bramble_order=bn,
                bramble=fam,
                hitting_set=hit,
                separation=sp,
                separation_witness=sw,
                grid_side=gs,
                grid_model=gm,
                grid_le_treewidth=tw >= gs,
                duality_holds=bn == tw + 1,
            )
        )
    return out
