"""Immutable simple graphs with bitmask adjacency, plus products, blow-ups,
generators, and the graph6 / edge-list codecs.

Vertices are always 0..n-1.  All constructors reject n = 0, self-loops, and
out-of-range endpoints, and enforce a vertex cap (default 4096) so that a
mistyped blow-up order cannot silently materialize a huge matrix.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from ._bits import bits_of, is_connected_mask
from .errors import CapacityError, Graph6Error

DEFAULT_VERTEX_CAP = 4096

ProbabilityLike = Union[Fraction, float, int, str]


class Graph:
    """Immutable undirected simple graph on vertices 0..n-1.

    The adjacency matrix is stored as one bitmask per row.  Instances are
    hashable and compare by (n, adjacency).
    """

    __slots__ = ("n", "m", "_adj")

    def __init__(
        self,
        n: int,
        edges: Iterable[Tuple[int, int]] = (),
        *,
        max_vertices: Optional[int] = DEFAULT_VERTEX_CAP,
    ):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"graph order must be a positive integer, got {n!r}")
        if max_vertices is not None and n > max_vertices:
            raise CapacityError(f"graph order {n} exceeds the vertex cap {max_vertices}")
        adj = [0] * n
        for pair in edges:
            u, v = pair
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"edge ({u}, {v}) is a self-loop")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_adj", tuple(adj))
        object.__setattr__(self, "m", sum(a.bit_count() for a in adj) // 2)

    @classmethod
    def _from_masks(cls, masks: Sequence[int]) -> "Graph":
        g = object.__new__(cls)
        object.__setattr__(g, "n", len(masks))
        object.__setattr__(g, "_adj", tuple(masks))
        object.__setattr__(g, "m", sum(a.bit_count() for a in masks) // 2)
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def adj_masks(self) -> Tuple[int, ...]:
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def neighbors(self, v: int) -> List[int]:
        return list(bits_of(self._adj[v]))

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges as (u, v) with u < v, in row-major order."""
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1) << (u + 1)
            for v in bits_of(rest):
                yield (u, v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class VertexSet:
    """A subset of the vertices of a host graph on ``host_n`` vertices."""

    __slots__ = ("host_n", "mask")

    def __init__(self, host_n: int, members: Iterable[int]):
        mask = 0
        for v in members:
            if not (isinstance(v, int) and 0 <= v < host_n):
                raise ValueError(f"vertex {v!r} outside 0..{host_n - 1}")
            mask |= 1 << v
        object.__setattr__(self, "host_n", host_n)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, host_n: int, mask: int) -> "VertexSet":
        if mask < 0 or mask >> host_n:
            raise ValueError(f"mask {mask:#x} outside host of order {host_n}")
        s = object.__new__(cls)
        object.__setattr__(s, "host_n", host_n)
        object.__setattr__(s, "mask", mask)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(bits_of(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.host_n and bool(self.mask >> v & 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.host_n == other.host_n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.host_n, self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({self.host_n}, {{{', '.join(map(str, self.members))}}})"


class BlowupVertex(NamedTuple):
    """A vertex of a blow-up: copy ``copy`` of base vertex ``base``."""

    base: int
    copy: int


def build_graph(
    n: int,
    edges: Iterable[Tuple[int, int]] = (),
    *,
    max_vertices: Optional[int] = DEFAULT_VERTEX_CAP,
) -> Graph:
    """Build a graph from an explicit edge list; duplicates collapse."""
    return Graph(n, edges, max_vertices=max_vertices)


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph._from_masks([(full & ~G.adj_mask(v)) & ~(1 << v) for v in range(G.n)])


def lexicographic_product(
    G: Graph, H: Graph, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP
) -> Graph:
    """Lexicographic product: (u, v) adjacent to (u', v') iff uu' is an edge of
    G, or u = u' and vv' is an edge of H.  Vertex (u, v) gets index u*|H| + v.
    """
    n = G.n * H.n
    if max_vertices is not None and n > max_vertices:
        raise CapacityError(
            f"product on {n} vertices exceeds the vertex cap {max_vertices}"
        )
    t = H.n
    block_full = (1 << t) - 1
    masks = [0] * n
    for u in range(G.n):
        row_between = 0
        for w in bits_of(G.adj_mask(u)):
            row_between |= block_full << (w * t)
        base = u * t
        for v in range(t):
            inside = H.adj_mask(v) << base
            masks[base + v] = row_between | inside
    return Graph._from_masks(masks)


def blowup_empty(G: Graph, t: int, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    """Blow-up with independent classes: the product G * (empty graph on t)."""
    if t < 1:
        raise ValueError(f"blow-up order must be >= 1, got {t}")
    return lexicographic_product(G, empty_graph(t), max_vertices=max_vertices)


def blowup_complete(G: Graph, t: int, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    """Blow-up with complete classes: the product G * K_t."""
    if t < 1:
        raise ValueError(f"blow-up order must be >= 1, got {t}")
    return lexicographic_product(G, complete_graph(t, max_vertices=max_vertices), max_vertices=max_vertices)


def blowup_vertex_index(t: int, v: BlowupVertex) -> int:
    """Integer index of a blow-up vertex, consistent with the product encoding."""
    return v.base * t + v.copy


def blowup_index_vertex(t: int, idx: int) -> BlowupVertex:
    base, copy = divmod(idx, t)
    return BlowupVertex(base, copy)


def blowup_adjacency(G: Graph, t: int, a: BlowupVertex, b: BlowupVertex, *, complete: bool) -> bool:
    """O(1) adjacency oracle for a blow-up of G, without materializing it.

    Agrees exactly with ``blowup_complete`` / ``blowup_empty`` under the
    index encoding ``base * t + copy``.
    """
    if t < 1:
        raise ValueError(f"blow-up order must be >= 1, got {t}")
    for v in (a, b):
        if not (0 <= v.base < G.n and 0 <= v.copy < t):
            raise ValueError(f"blow-up vertex {v} outside base order {G.n}, copies {t}")
    if a == b:
        return False
    if a.base == b.base:
        return complete
    return G.has_edge(a.base, b.base)


# ---------------------------------------------------------------------------
# generators


def complete_graph(n: int, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    if n < 1:
        raise ValueError(f"graph order must be >= 1, got {n}")
    if max_vertices is not None and n > max_vertices:
        raise CapacityError(f"graph order {n} exceeds the vertex cap {max_vertices}")
    full = (1 << n) - 1
    return Graph._from_masks([full & ~(1 << v) for v in range(n)])


def empty_graph(n: int, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    return Graph(n, (), max_vertices=max_vertices)


def path_graph(n: int, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)], max_vertices=max_vertices)


def cycle_graph(n: int, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], max_vertices=max_vertices)


def complete_bipartite_graph(a: int, b: int, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    if a < 1 or b < 1:
        raise ValueError(f"both sides must be >= 1, got {a}, {b}")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], max_vertices=max_vertices)


def grid_graph(k: int, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    """k x k grid; cell (r, c) gets index r*k + c."""
    if k < 1:
        raise ValueError(f"grid side must be >= 1, got {k}")
    edges = []
    for r in range(k):
        for c in range(k):
            if c + 1 < k:
                edges.append((r * k + c, r * k + c + 1))
            if r + 1 < k:
                edges.append((r * k + c, (r + 1) * k + c))
    return Graph(k * k, edges, max_vertices=max_vertices)


_SM64_GOLDEN = 0x9E3779B97F4A7C15
_M64 = (1 << 64) - 1


def _splitmix64_draw(seed: int, k: int) -> int:
    """The k-th output (k >= 0) of the SplitMix64 stream seeded with ``seed``.

    Output k is mix(seed + (k+1) * 0x9E3779B97F4A7C15) with the standard
    SplitMix64 finalizer, all arithmetic mod 2**64.
    """
    z = (seed + (k + 1) * _SM64_GOLDEN) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def as_probability(p: ProbabilityLike) -> Fraction:
    """Convert a probability to an exact Fraction in [0, 1].

    Floats are taken at their exact binary value; strings accept "p/q".
    """
    q = Fraction(p)
    if not (0 <= q <= 1):
        raise ValueError(f"probability {p!r} outside [0, 1]")
    return q


def random_gnp(
    n: int,
    p: ProbabilityLike,
    seed: int,
    *,
    max_vertices: Optional[int] = DEFAULT_VERTEX_CAP,
) -> Graph:
    """Deterministic G(n, p) sample.

    Pairs are visited in the fixed order (0,1), (0,2), ..., (0,n-1), (1,2),
    ..., (n-2,n-1); pair number k is included iff draw_k / 2**64 < p, where
    draw_k is the k-th output of the SplitMix64 stream seeded with ``seed``
    (see ``_splitmix64_draw``).  The comparison is exact rational arithmetic,
    so equal (n, p, seed) always give the identical graph.
    """
    q = as_probability(p)
    threshold_num = q.numerator << 64
    den = q.denominator
    edges = []
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if _splitmix64_draw(seed, k) * den < threshold_num:
                edges.append((u, v))
            k += 1
    return Graph(n, edges, max_vertices=max_vertices)


# ---------------------------------------------------------------------------
# graph6 codec
#
# Format: an order prefix N(n) followed by the upper triangle of the
# adjacency matrix in column order x(0,1), x(0,2), x(1,2), x(0,3), ...,
# packed into 6-bit groups, each group printed as one byte with offset 63.
# The final group is padded with zero bits.


def graph6_encode(G: Graph) -> str:
    n = G.n
    if n <= 62:
        prefix = chr(63 + n)
    elif n <= 258047:
        prefix = chr(126) + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    else:
        prefix = chr(126) + chr(126) + "".join(
            chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0)
        )
    bits = []
    for col in range(1, n):
        for row in range(col):
            bits.append(G.has_edge(row, col))
    chunks = []
    for i in range(0, len(bits), 6):
        group = bits[i : i + 6]
        val = 0
        for b in group:
            val = val << 1 | b
        val <<= 6 - len(group)
        chunks.append(chr(63 + val))
    return prefix + "".join(chunks)


def graph6_decode(s: str, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    """Decode a graph6 string; a leading ">>graph6<<" header is allowed.

    Malformed input raises Graph6Error carrying the byte offset of the
    offending character.
    """
    base = 0
    if s.startswith(">>graph6<<"):
        base = len(">>graph6<<")
        s = s[base:]
    s = s.rstrip("\n")
    if not s:
        raise Graph6Error("empty graph6 string", base)
    codes = []
    for i, ch in enumerate(s):
        c = ord(ch)
        if not (63 <= c <= 126):
            raise Graph6Error(f"character {ch!r} outside graph6 range", base + i)
        codes.append(c - 63)
    if codes[0] != 63:
        n = codes[0]
        pos = 1
    elif len(codes) >= 2 and codes[1] != 63:
        if len(codes) < 4:
            raise Graph6Error("truncated 3-byte order field", base + len(s))
        n = codes[1] << 12 | codes[2] << 6 | codes[3]
        pos = 4
    else:
        if len(codes) < 8:
            raise Graph6Error("truncated 6-byte order field", base + len(s))
        n = 0
        for c in codes[2:8]:
            n = n << 6 | c
        pos = 8
    if n < 1:
        raise Graph6Error(f"decoded order {n} is not a positive integer", base)
    if max_vertices is not None and n > max_vertices:
        raise CapacityError(f"decoded order {n} exceeds the vertex cap {max_vertices}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(codes) - pos != nbytes:
        raise Graph6Error(
            f"expected {nbytes} adjacency bytes for order {n}, found {len(codes) - pos}",
            base + pos,
        )
    masks = [0] * n
    idx = 0
    for j, c in enumerate(codes[pos:]):
        for k in range(5, -1, -1):
            bit = c >> k & 1
            if idx >= nbits:
                if bit:
                    raise Graph6Error("nonzero padding bit", base + pos + j)
                continue
            if bit:
                col = _g6_column(idx)
                row = idx - col * (col - 1) // 2
                masks[row] |= 1 << col
                masks[col] |= 1 << row
            idx += 1
    return Graph._from_masks(masks)


def _g6_column(idx: int) -> int:
    # smallest col with col*(col+1)/2 > idx, i.e. the column of triangle bit idx
    col = int(((2 * idx) ** 0.5))
    while col * (col - 1) // 2 > idx:
        col -= 1
    while (col + 1) * col // 2 <= idx:
        col += 1
    return col


# ---------------------------------------------------------------------------
# edge-list text format: "n m" on the first line, then one "u v" line per
# edge.  Blank lines and lines starting with '#' are ignored when parsing.


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, *, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> Graph:
    rows = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not rows:
        raise ValueError("empty edge-list text")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError(f"header must be 'n m', got {rows[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise ValueError(f"header declares {m} edges but {len(rows) - 1} lines follow")
    edges = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"edge line must be 'u v', got {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, edges, max_vertices=max_vertices)


def is_connected(G: Graph) -> bool:
    return is_connected_mask(G.adj_masks(), (1 << G.n) - 1)
