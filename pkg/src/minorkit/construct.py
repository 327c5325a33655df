"""Explicit construction pipeline: search small base graphs whose bounded-
breadth clique-minor structure certifies a fractional upper bound, then blow
them up to arbitrarily large graphs with the same clique-minor density.

The chain behind the emitted claim, all exact:
  - a clique minor of the t-fold complete blow-up, divided by t, is a
    feasible 1/t-integral weighting of the base, hence at most the base's
    fractional value;
  - the fractional value is at most n0/d + d*s for every breadth d, where s
    is the exact maximum order of a breadth-d clique minor: support members
    larger than d carry total weight at most n0/d by vertex loads, and the
    small members round greedily to a breadth-d clique minor eating weight
    at most d per branch set.
So h(blow-up) <= t * (n0/d + d*s) with every quantity on the right computed
exhaustively on the small base graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Literal, Optional, Sequence, Tuple

from .graphs import (
    DEFAULT_VERTEX_CAP,
    Graph,
    blowup_complete,
    blowup_index_vertex,
    blowup_adjacency,
    complement,
    random_gnp,
)
from .minors import max_clique_minor_bounded

EXHAUSTIVE_ORDER_CAP = 8

GRAPH_CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


# ---------------------------------------------------------------------------
# canonical codes and orderly enumeration


def _column_chunk(adj: Sequence[int], perm: List[int], w: int) -> int:
    """Bits of the new column when ``w`` is placed after ``perm``: pair
    (i, j) ahead of (i', j) for i < i'."""
    j = len(perm)
    chunk = 0
    row = adj[w]
    for i in range(j):
        chunk = chunk << 1 | (row >> perm[i] & 1)
    return chunk


def canonical_code(G: Graph) -> Tuple[int, Tuple[int, ...]]:
    """Minimum, over vertex orders, of the upper-triangle adjacency bits
    packed most-significant-first in column order (0,1), (0,2), (1,2), ...

    Returns the code and one order attaining it.  Equal codes characterize
    isomorphism, so the code is a canonical form.  Search is a permutation
    DFS ordered by smallest next column, pruned on prefix comparison.
    """
    n = G.n
    adj = G.adj_masks()
    best: Optional[int] = None
    best_perm: Optional[Tuple[int, ...]] = None
    total_bits = n * (n - 1) // 2

    def rec(perm: List[int], used: int, prefix: int, bits: int):
        nonlocal best, best_perm
        j = len(perm)
        if j == n:
            if best is None or prefix < best:
                best = prefix
                best_perm = tuple(perm)
            return
        options = []
        for w in range(n):
            if used >> w & 1:
                continue
            options.append((_column_chunk(adj, perm, w), w))
        options.sort()
        for chunk, w in options:
            new_prefix = prefix << j | chunk
            new_bits = bits + j
            if best is not None and new_prefix > best >> (total_bits - new_bits):
                continue
            perm.append(w)
            rec(perm, used | 1 << w, new_prefix, new_bits)
            perm.pop()

    rec([], 0, 0, 0)
    assert best is not None and best_perm is not None
    return best, best_perm


def _graph_code(adj: Sequence[int]) -> int:
    code = 0
    n = len(adj)
    for j in range(1, n):
        for i in range(j):
            code = code << 1 | (adj[i] >> j & 1)
    return code


def _is_canonical(adj: Sequence[int]) -> bool:
    """Whether the identity order already attains the canonical code.  Stops
    at the first strictly smaller prefix found."""
    n = len(adj)
    own = _graph_code(adj)
    total_bits = n * (n - 1) // 2

    def rec(perm: List[int], used: int, prefix: int, bits: int) -> bool:
        j = len(perm)
        if j == n:
            return prefix < own
        options = []
        for w in range(n):
            if used >> w & 1:
                continue
            options.append((_column_chunk(adj, perm, w), w))
        options.sort()
        for chunk, w in options:
            new_prefix = prefix << j | chunk
            new_bits = bits + j
            ref = own >> (total_bits - new_bits)
            if new_prefix > ref:
                continue
            if new_prefix < ref:
                return True
            perm.append(w)
            if rec(perm, used | 1 << w, new_prefix, new_bits):
                return True
            perm.pop()
        return False

    return not rec([], 0, 0, 0)


def canonical_graph(G: Graph) -> Graph:
    """G relabeled into its canonical order; isomorphic inputs map to the
    identical output graph."""
    _, perm = canonical_code(G)
    pos = [0] * G.n
    for i, v in enumerate(perm):
        pos[v] = i
    masks = [0] * G.n
    for i, v in enumerate(perm):
        m = 0
        for w in range(G.n):
            if G.adj_mask(v) >> w & 1:
                m |= 1 << pos[w]
        masks[i] = m
    return Graph._from_masks(masks)


def enumerate_nonisomorphic_graphs(n: int) -> List[Graph]:
    """Exactly one representative per isomorphism class on n vertices, each
    in canonical order, sorted by canonical code.

    Orderly generation: the first k vertices of a canonical code form a
    canonical code themselves (a better order of the prefix would extend to
    a better order overall), so level k + 1 is built by attaching one new
    vertex to each canonical level-k graph in every possible way and keeping
    the self-canonical results.
    """
    if n < 1:
        raise ValueError(f"graph order must be >= 1, got {n}")
    if n > EXHAUSTIVE_ORDER_CAP:
        raise ValueError(
            f"exhaustive enumeration capped at {EXHAUSTIVE_ORDER_CAP} vertices, got {n}"
        )
    level: List[List[int]] = [[0]]
    for k in range(1, n):
        nxt: List[List[int]] = []
        for adj in level:
            for pattern in range(1 << k):
                new_adj = list(adj)
                for v in range(k):
                    if pattern >> v & 1:
                        new_adj[v] |= 1 << k
                new_adj.append(pattern)
                if _is_canonical(new_adj):
                    nxt.append(new_adj)
        level = nxt
    graphs = [Graph._from_masks(adj) for adj in level]
    graphs.sort(key=lambda g: _graph_code(g.adj_masks()))
    return graphs


# ---------------------------------------------------------------------------
# certified fractional upper bounds from bounded-breadth minors


def hf_upper_from_bounded(G: Graph, d: int) -> Fraction:
    """Exact upper bound n/d + d*s on the fractional value, with s the
    largest order of a clique minor all of whose branch sets have at most d
    vertices (computed exhaustively)."""
    if d < 1:
        raise ValueError(f"breadth must be >= 1, got {d}")
    s, _ = max_clique_minor_bounded(G, d)
    return Fraction(G.n, d) + d * s


# ---------------------------------------------------------------------------
# witness search


@dataclass(frozen=True)
class WitnessSpec:
    """What to look for in a base graph.

    mode "mader": among graphs with edge density at least ``density``,
    minimize the certified fractional upper bound.  mode "thomason": no
    density filter; minimize the worse of the bounds for the graph and its
    complement, both at one shared breadth.

    ``breadth`` fixes d; by default every 1 <= d <= n0 is swept and the best
    taken.  ``forbidden_order``, when set, admits only (graph, d) pairs
    whose bounded clique-minor order stays below it.
    """

    n0: int
    mode: Literal["mader", "thomason"]
    density: Optional[Fraction] = None
    forbidden_order: Optional[int] = None
    breadth: Optional[int] = None
    search: Literal["exhaustive", "sampled"] = "exhaustive"
    samples: int = 0
    seed: int = 0


@dataclass(frozen=True)
class Witness:
    """A base graph with its certified bound evidence.

    ``bound`` is hf_upper_from_bounded(graph, breadth); for thomason mode
    the complement fields hold the same data for the complement and the
    score is the larger bound.  ``epsilon`` = score / n0 is the per-vertex
    clique-minor density every blow-up inherits."""

    spec: WitnessSpec
    graph: Graph
    breadth: int
    bounded_order: int
    bound: Fraction
    complement_bounded_order: Optional[int]
    complement_bound: Optional[Fraction]
    epsilon: Fraction
    classes_examined: int

    @property
    def score(self) -> Fraction:
        if self.complement_bound is not None and self.complement_bound > self.bound:
            return self.complement_bound
        return self.bound


def _validate_spec(spec: WitnessSpec) -> None:
    if spec.n0 < 1:
        raise ValueError(f"base order must be >= 1, got {spec.n0}")
    if spec.mode not in ("mader", "thomason"):
        raise ValueError(f"unknown mode {spec.mode!r}")
    if spec.mode == "mader":
        if spec.density is None or not 0 < spec.density < 1:
            raise ValueError("mader mode needs a density strictly between 0 and 1")
    if spec.search == "exhaustive":
        if spec.n0 > EXHAUSTIVE_ORDER_CAP:
            raise ValueError(
                f"exhaustive search capped at {EXHAUSTIVE_ORDER_CAP} vertices, got {spec.n0}"
            )
    elif spec.search == "sampled":
        if spec.samples < 1:
            raise ValueError(f"sampled search needs samples >= 1, got {spec.samples}")
    else:
        raise ValueError(f"unknown search {spec.search!r}")
    if spec.breadth is not None and not 1 <= spec.breadth <= spec.n0:
        raise ValueError(f"breadth must lie in 1..{spec.n0}, got {spec.breadth}")
    if spec.forbidden_order is not None and spec.forbidden_order < 1:
        raise ValueError(f"forbidden order must be >= 1, got {spec.forbidden_order}")


def _candidates(spec: WitnessSpec) -> List[Graph]:
    if spec.search == "exhaustive":
        return enumerate_nonisomorphic_graphs(spec.n0)
    p = spec.density if spec.mode == "mader" else Fraction(1, 2)
    return [random_gnp(spec.n0, p, spec.seed + i) for i in range(spec.samples)]


def search_witness(spec: WitnessSpec) -> Witness:
    """Best base graph for a WitnessSpec, deterministically.

    Scores are exact fractions; ties go to the smaller breadth, then to the
    smaller canonical code.  Raises ValueError when no candidate qualifies
    (e.g. the density filter excludes every sampled graph).
    """
    _validate_spec(spec)
    n0 = spec.n0
    min_edges = 0
    if spec.mode == "mader":
        need = spec.density * (n0 * (n0 - 1) // 2)
        min_edges = -(-need.numerator // need.denominator)
    depths = [spec.breadth] if spec.breadth is not None else list(range(1, n0 + 1))
    best_key: Optional[Tuple[Fraction, int, int]] = None
    best: Optional[Witness] = None
    examined = 0
    for G in _candidates(spec):
        if spec.mode == "mader" and G.m < min_edges:
            continue
        examined += 1
        comp = complement(G) if spec.mode == "thomason" else None
        choice: Optional[Tuple[Fraction, int, int, Fraction, Optional[int], Optional[Fraction]]] = None
        for d in depths:
            s, _ = max_clique_minor_bounded(G, d)
            if spec.forbidden_order is not None and s >= spec.forbidden_order:
                continue
            bound = Fraction(n0, d) + d * s
            if comp is not None:
                s2, _ = max_clique_minor_bounded(comp, d)
                if spec.forbidden_order is not None and s2 >= spec.forbidden_order:
                    continue
                bound2 = Fraction(n0, d) + d * s2
                score = max(bound, bound2)
            else:
                s2, bound2 = None, None
                score = bound
            if choice is None or (score, d) < (choice[0], choice[1]):
                choice = (score, d, s, bound, s2, bound2)
        if choice is None:
            continue
        score, d, s, bound, s2, bound2 = choice
        if best_key is None or score < best_key[0] or (
            score == best_key[0] and canonical_code(G)[0] < best_key[2]
        ):
            best_key = (score, d, canonical_code(G)[0])
            best = Witness(
                spec=spec,
                graph=G,
                breadth=d,
                bounded_order=s,
                bound=bound,
                complement_bounded_order=s2,
                complement_bound=bound2,
                epsilon=score / n0,
                classes_examined=0,
            )
    if best is None:
        raise ValueError("no candidate graph meets the search criteria")
    return Witness(
        spec=best.spec,
        graph=best.graph,
        breadth=best.breadth,
        bounded_order=best.bounded_order,
        bound=best.bound,
        complement_bounded_order=best.complement_bounded_order,
        complement_bound=best.complement_bound,
        epsilon=best.epsilon,
        classes_examined=examined,
    )


# ---------------------------------------------------------------------------
# blow-up emission


@dataclass(frozen=True)
class ConstructionHandle:
    """A t-fold complete blow-up of a witness, usable without materializing.

    ``bound`` = t * witness score is a certified upper bound on the
    clique-minor number of the emitted graph (and, in thomason mode, of its
    complement as well: the complement of the complete blow-up embeds in the
    complement's complete blow-up).  ``epsilon`` = bound / order never
    changes with t.
    """

    witness: Witness
    t: int
    order: int
    bound: Fraction
    epsilon: Fraction

    def adjacent(self, a: int, b: int) -> bool:
        """O(1) adjacency between flat vertex indices of the blow-up."""
        t = self.t
        va = blowup_index_vertex(t, a)
        vb = blowup_index_vertex(t, b)
        return blowup_adjacency(self.witness.graph, t, va, vb, complete=True)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Stream the blow-up's edges as ordered pairs, row-major; nothing
        is materialized, so this works for any t (in O(order^2) steps)."""
        G = self.witness.graph
        t = self.t
        for a in range(self.order):
            abase = a // t
            row = G.adj_mask(abase)
            for b in range(a + 1, self.order):
                bbase = b // t
                if abase == bbase or row >> bbase & 1:
                    yield (a, b)

    def materialize(self, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
        return blowup_complete(self.witness.graph, self.t, max_vertices=max_vertices)


def emit_construction(witness: Witness, t: int) -> ConstructionHandle:
    """Scale a witness to a graph on n0 * t vertices carrying the same
    certified per-vertex clique-minor density."""
    if t < 1:
        raise ValueError(f"blow-up order must be >= 1, got {t}")
    order = witness.graph.n * t
    bound = t * witness.score
    handle = ConstructionHandle(
        witness=witness,
        t=t,
        order=order,
        bound=bound,
        epsilon=bound / order,
    )
    assert handle.epsilon == witness.epsilon
    return handle
