"""Fractional and r-integral clique-minor values via exact rational packing.

The fractional value of a touching kind is the maximum, over maximal
brambles of that kind, of the packing LP: put nonnegative weights on the
members so that each vertex carries total weight at most 1, maximizing the
weight sum.  Restricting weights to multiples of 1/r gives the r-integral
value; r = 1 recovers the integral clique-minor number, since weight-1
members must be pairwise disjoint and touching, which makes them branch sets.

All arithmetic is exact (fractions.Fraction).  The LP solver is a dense
simplex with Bland's rule and an internal strong-duality check, so every
reported optimum is self-certified.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Literal, Optional, Sequence, Tuple

from ._bits import bits_of
from .brambles import (
    DEFAULT_CANDIDATE_CAP,
    DEFAULT_VISIT_CAP,
    BrambleFamily,
    BrambleSearch,
    Kind,
    validate_bramble,
)
from .errors import CapacityError, CertificateError
from .graphs import Graph, VertexSet, blowup_complete, blowup_empty, grid_graph
from .minors import MinorModel, hadwiger_number


@dataclass(frozen=True)
class WeightedBramble:
    """A bramble with positive rational member weights; its value is the
    weight sum.  Feasibility means every vertex carries load at most 1."""

    host_n: int
    members: Tuple[VertexSet, ...]
    weights: Tuple[Fraction, ...]
    kind: Kind

    @property
    def value(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def family(self) -> BrambleFamily:
        return BrambleFamily(self.host_n, self.members, self.kind)


def validate_weighted_bramble(G: Graph, wb: WeightedBramble) -> None:
    if len(wb.members) != len(wb.weights):
        raise CertificateError(
            f"{len(wb.members)} members but {len(wb.weights)} weights"
        )
    for i, w in enumerate(wb.weights):
        if not isinstance(w, Fraction) or w <= 0:
            raise CertificateError(f"weight {i} is {w!r}, need a positive fraction")
    validate_bramble(G, wb.family())
    for v in range(G.n):
        load = sum((w for s, w in zip(wb.members, wb.weights) if v in s), Fraction(0))
        if load > 1:
            raise CertificateError(f"vertex {v} carries load {load} > 1")


def evaluate_certificate(G: Graph, wb: WeightedBramble) -> Fraction:
    """Validate a weighted bramble and return its certified value."""
    validate_weighted_bramble(G, wb)
    return wb.value


@dataclass(frozen=True)
class HadwigerValue:
    """Outcome of a fractional computation.

    ``value`` is always certified by ``certificate`` (when not None); with
    status "exact" it is the true optimum, with status "lower-bound" the
    truth lies in [value, upper_bound].  ``dual_cover`` is a per-vertex
    fractional cover proving the value optimal within the certificate's
    support (dual LP weights summing to the value).
    """

    kind: Kind
    value: Fraction
    status: Literal["exact", "lower-bound"]
    upper_bound: Fraction
    certificate: Optional[WeightedBramble]
    dual_cover: Optional[Tuple[Fraction, ...]] = None


def _ceil_sqrt(v: int) -> int:
    s = isqrt(v)
    return s if s * s == v else s + 1


# ---------------------------------------------------------------------------
# exact rational simplex


def _simplex_max_sum(
    rows: Sequence[int], rhs: Sequence[Fraction], ncols: int
) -> Tuple[Fraction, List[Fraction], List[Fraction]]:
    """Maximize sum(x) subject to, for each i, sum of x_j over the bits j of
    rows[i] at most rhs[i], and x >= 0.  All rhs must be nonnegative.

    Returns (value, x, y) with y the dual cover weights; optimality is
    asserted internally via strong duality, so the result is trustworthy.
    """
    nrows = len(rows)
    width = ncols + nrows + 1
    T: List[List[Fraction]] = []
    for i, rmask in enumerate(rows):
        row = [Fraction(0)] * width
        for j in bits_of(rmask):
            row[j] = Fraction(1)
        row[ncols + i] = Fraction(1)
        row[-1] = Fraction(rhs[i])
        if row[-1] < 0:
            raise ValueError("simplex requires nonnegative right-hand sides")
        T.append(row)
    obj = [Fraction(1)] * ncols + [Fraction(0)] * (nrows + 1)
    basis = [ncols + i for i in range(nrows)]

    while True:
        e = next((j for j in range(ncols + nrows) if obj[j] > 0), None)
        if e is None:
            break
        leave = None
        best_ratio: Optional[Fraction] = None
        for i in range(nrows):
            cell = T[i][e]
            if cell > 0:
                ratio = T[i][-1] / cell
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        assert leave is not None, "packing LP cannot be unbounded"
        piv = T[leave][e]
        T[leave] = [c / piv for c in T[leave]]
        for i in range(nrows):
            if i != leave and T[i][e]:
                f = T[i][e]
                T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
        if obj[e]:
            f = obj[e]
            obj = [a - f * b for a, b in zip(obj, T[leave])]
        basis[leave] = e

    value = -obj[-1]
    x = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        if b < ncols:
            x[b] = T[i][-1]
    y = [-obj[ncols + i] for i in range(nrows)]

    assert sum(x, Fraction(0)) == value
    assert all(xi >= 0 for xi in x)
    for i, rmask in enumerate(rows):
        assert sum((x[j] for j in bits_of(rmask)), Fraction(0)) <= rhs[i]
    assert all(yi >= 0 for yi in y)
    for j in range(ncols):
        cover = sum((y[i] for i in range(nrows) if rows[i] >> j & 1), Fraction(0))
        assert cover >= 1
    assert sum((y[i] * rhs[i] for i in range(nrows)), Fraction(0)) == value
    return value, x, y


def _vertex_columns(masks: Sequence[int], n: int) -> List[int]:
    cols = [0] * n
    for j, mk in enumerate(masks):
        for v in bits_of(mk):
            cols[v] |= 1 << j
    return cols


def packing_lp(
    masks: Sequence[int],
    n: int,
    capacity: int = 1,
    *,
    lowers: Optional[Sequence[int]] = None,
    uppers: Optional[Sequence[Optional[int]]] = None,
) -> Optional[Tuple[Fraction, List[Fraction]]]:
    """Exact optimum of: maximize sum(w), each vertex load at most
    ``capacity``, with optional integer box bounds on the weights.

    Returns None when the box bounds alone are infeasible.
    """
    k = len(masks)
    if k == 0:
        return Fraction(0), []
    lo = list(lowers) if lowers is not None else [0] * k
    vcols = _vertex_columns(masks, n)
    rows: List[int] = []
    rhs: List[Fraction] = []
    for v in range(n):
        if not vcols[v]:
            continue
        slack = capacity - sum(lo[j] for j in bits_of(vcols[v]))
        if slack < 0:
            return None
        rows.append(vcols[v])
        rhs.append(Fraction(slack))
    if uppers is not None:
        for j, u in enumerate(uppers):
            if u is None:
                continue
            cap = u - lo[j]
            if cap < 0:
                return None
            rows.append(1 << j)
            rhs.append(Fraction(cap))
    value, x, _ = _simplex_max_sum(rows, rhs, k)
    total = value + sum(lo)
    return Fraction(total), [x[j] + lo[j] for j in range(k)]


def lp_max_weight(
    sets: Sequence[VertexSet],
) -> Tuple[Fraction, List[Fraction], List[Fraction]]:
    """Packing optimum for an explicit family: maximize the weight sum with
    every vertex load at most 1.

    Returns (optimum, member weights, dual cover) where the dual assigns
    each host vertex a rational weight so that every member is covered by
    total at least 1 and the dual total equals the optimum.  Both sides are
    exact, so the pair certifies itself.
    """
    if not sets:
        raise ValueError("lp_max_weight needs at least one set")
    n = sets[0].host_n
    for s in sets:
        if s.host_n != n:
            raise ValueError("sets address hosts of different orders")
    masks = [s.mask for s in sets]
    rows = _vertex_columns(masks, n)
    value, x, y = _simplex_max_sum(rows, [Fraction(1)] * n, len(masks))
    return value, x, y


def _minimal_masks(masks: Sequence[int]) -> List[int]:
    """Inclusion-minimal masks, input sorted by (size, value).

    Weight on a member can always be shifted onto an inclusion-minimal
    subset member without raising any vertex load, so packing optima over a
    family and over its minimal members agree, for fractional and for
    1/r-integral weights alike.
    """
    mins: List[int] = []
    for mk in masks:
        if not any(x & ~mk == 0 for x in mins):
            mins.append(mk)
    return mins


def _ilp_max_weight(
    masks: Sequence[int], n: int, r: int, *, prune_at: int
) -> Tuple[int, Optional[List[int]]]:
    """Maximize the integer total of z weights with vertex loads at most r.

    Branch and bound on the LP relaxation, best bound first.  Only totals
    strictly above ``prune_at`` are reported; returns (best, z) with z None
    when nothing beat prune_at.
    """
    k = len(masks)
    best = prune_at
    best_vec: Optional[List[int]] = None
    root = packing_lp(masks, n, r)
    if root is None:
        return best, None
    counter = 0
    heap: List[Tuple[Fraction, int, Tuple[int, ...], Tuple[Optional[int], ...], List[Fraction]]] = []
    heap.append((-root[0], counter, tuple([0] * k), tuple([None] * k), root[1]))
    while heap:
        nbound, _, lo, up, vec = heapq.heappop(heap)
        bound = -nbound
        if bound <= best:
            continue
        frac_j = next((j for j, zj in enumerate(vec) if zj.denominator != 1), None)
        if frac_j is None:
            total = sum(int(zj) for zj in vec)
            if total > best:
                best = total
                best_vec = [int(zj) for zj in vec]
            continue
        pivot = vec[frac_j]
        for new_lo, new_up in (
            (lo, up[:frac_j] + (int(pivot),) + up[frac_j + 1 :]),
            (lo[:frac_j] + (int(pivot) + 1,) + lo[frac_j + 1 :], up),
        ):
            res = packing_lp(masks, n, r, lowers=new_lo, uppers=new_up)
            if res is None:
                continue
            val, zvec = res
            if val > best:
                counter += 1
                heapq.heappush(heap, (-val, counter, new_lo, new_up, zvec))
    return best, best_vec


# ---------------------------------------------------------------------------
# fractional and r-integral values


def _weak_seed(G: Graph) -> Tuple[int, List[int], List[Fraction]]:
    h, model = hadwiger_number(G)
    masks = list(model.branch_masks())
    return h, masks, [Fraction(1)] * h


def _strong_seed(G: Graph) -> Tuple[Fraction, List[int], List[Fraction]]:
    for u, v in G.edges():
        return Fraction(1), [1 << u | 1 << v], [Fraction(1)]
    return Fraction(0), [], []


def _formula_upper(G: Graph, kind: Kind, h: Optional[int]) -> Fraction:
    cands = [Fraction(G.n, 2) if kind == "strong" else Fraction(G.n)]
    cands.append(Fraction(_ceil_sqrt(3 * G.m + 1)))
    if h is not None:
        cands.append(Fraction(_ceil_sqrt(2 * h * G.n)))
    return min(cands)


def _certificate(
    G: Graph, kind: Kind, masks: Sequence[int], weights: Sequence[Fraction]
) -> Optional[WeightedBramble]:
    if not masks:
        return None
    members = tuple(VertexSet.from_mask(G.n, mk) for mk in masks)
    wb = WeightedBramble(G.n, members, tuple(weights), kind)
    validate_weighted_bramble(G, wb)
    return wb


def _support_dual(n: int, masks: Sequence[int], value: Fraction) -> Optional[Tuple[Fraction, ...]]:
    """Dual cover certifying ``value`` optimal over the given support."""
    if not masks:
        return None
    rows = _vertex_columns(masks, n)
    got, _, y = _simplex_max_sum(rows, [Fraction(1)] * n, len(masks))
    assert got == value
    return tuple(y)


def fractional_hadwiger(
    G: Graph,
    kind: Kind = "weak",
    *,
    max_candidates: int = DEFAULT_CANDIDATE_CAP,
    max_visits: int = DEFAULT_VISIT_CAP,
) -> HadwigerValue:
    """Exact fractional value of the given touching kind, with a weighted
    bramble certifying the reported lower bound.

    When a search cap is hit the status degrades to "lower-bound" and
    ``upper_bound`` comes from proven closed-form bounds instead of the
    (unfinished) enumeration.
    """
    n = G.n
    h: Optional[int] = None
    if kind == "weak":
        h, best_masks, best_weights = _weak_seed(G)
        best_val = Fraction(h)
    else:
        best_val, best_masks, best_weights = _strong_seed(G)
    try:
        search = BrambleSearch(G, kind, max_candidates=max_candidates)
    except CapacityError:
        cert = _certificate(G, kind, best_masks, best_weights)
        dual = _support_dual(n, best_masks, best_val)
        return HadwigerValue(
            kind, best_val, "lower-bound", _formula_upper(G, kind, h), cert, dual
        )

    def prune(fam: int) -> bool:
        return search.min_hitting(fam, at_most=int(best_val)) is not None

    def visit(fam: int) -> None:
        nonlocal best_val, best_masks, best_weights
        if search.min_hitting(fam, at_most=int(best_val)) is not None:
            return
        mins = _minimal_masks(search.family_masks(fam))
        res = packing_lp(mins, n, 1)
        assert res is not None
        val, x = res
        if val > best_val:
            best_val = val
            best_masks = [mk for mk, xj in zip(mins, x) if xj > 0]
            best_weights = [xj for xj in x if xj > 0]

    complete = True
    try:
        search.enumerate_maximal(visit, max_visits=max_visits, prune=prune)
    except CapacityError:
        complete = False
    cert = _certificate(G, kind, best_masks, best_weights)
    dual = _support_dual(n, best_masks, best_val)
    if complete:
        return HadwigerValue(kind, best_val, "exact", best_val, cert, dual)
    return HadwigerValue(
        kind, best_val, "lower-bound", _formula_upper(G, kind, h), cert, dual
    )


def r_integral_hadwiger_via_ilp(
    G: Graph,
    r: int,
    kind: Kind = "weak",
    *,
    max_candidates: int = DEFAULT_CANDIDATE_CAP,
    max_visits: int = DEFAULT_VISIT_CAP,
) -> Tuple[Fraction, Optional[WeightedBramble]]:
    """Optimum over brambles of the given kind with weights in multiples of
    1/r, solved exactly by branch and bound over maximal families."""
    if r < 1:
        raise ValueError(f"weight denominator must be >= 1, got {r}")
    n = G.n
    if kind == "weak":
        h, seed_masks, _ = _weak_seed(G)
        best_z = h * r
        best_masks: List[int] = seed_masks
        best_zvec: List[int] = [r] * h
    else:
        sval, seed_masks, _ = _strong_seed(G)
        best_z = int(sval) * r
        best_masks = seed_masks
        best_zvec = [r] * len(seed_masks)
    search = BrambleSearch(G, kind, max_candidates=max_candidates)

    def prune(fam: int) -> bool:
        return search.min_hitting(fam, at_most=best_z // r) is not None

    def visit(fam: int) -> None:
        nonlocal best_z, best_masks, best_zvec
        if search.min_hitting(fam, at_most=best_z // r) is not None:
            return
        mins = _minimal_masks(search.family_masks(fam))
        got, zvec = _ilp_max_weight(mins, n, r, prune_at=best_z)
        if zvec is not None:
            best_z = got
            best_masks = [mk for mk, zj in zip(mins, zvec) if zj > 0]
            best_zvec = [zj for zj in zvec if zj > 0]

    search.enumerate_maximal(visit, max_visits=max_visits, prune=prune)
    weights = [Fraction(zj, r) for zj in best_zvec]
    cert = _certificate(G, kind, best_masks, weights)
    return Fraction(best_z, r), cert


def r_integral_hadwiger_via_blowup(
    G: Graph, r: int, *, complete: bool = True
) -> Tuple[Fraction, MinorModel]:
    """Clique-minor number of the r-fold blow-up, divided by r, with the
    witness model in the blow-up.

    The complete blow-up (classes spanning cliques) realizes the weak
    r-integral value; this is the route independent of the packing solver.
    """
    if r < 1:
        raise ValueError(f"blow-up order must be >= 1, got {r}")
    B = blowup_complete(G, r) if complete else blowup_empty(G, r)
    hb, model = hadwiger_number(B)
    return Fraction(hb, r), model


def project_blowup_model(
    G: Graph, r: int, model: MinorModel, *, complete: bool = True
) -> WeightedBramble:
    """Project a clique-minor model of the r-fold blow-up down to the base:
    each branch set maps to its set of base vertices with weight 1/r, equal
    projections merging by weight sum.

    Complete blow-ups yield a weak weighted bramble of value order/r.  For
    the edgeless blow-up the projection is returned with the strong kind and
    may legitimately fail validation when a branch set projects to a single
    vertex; callers checking that route must expect CertificateError.
    """
    if model.host_n != G.n * r:
        raise ValueError(
            f"model host order {model.host_n} is not {G.n} * {r}"
        )
    merged: dict = {}
    for b in model.branch_sets:
        base_mask = 0
        for idx in b:
            base_mask |= 1 << (idx // r)
        merged[base_mask] = merged.get(base_mask, Fraction(0)) + Fraction(1, r)
    masks = sorted(merged, key=lambda mk: (mk.bit_count(), mk))
    members = tuple(VertexSet.from_mask(G.n, mk) for mk in masks)
    weights = tuple(merged[mk] for mk in masks)
    kind: Kind = "weak" if complete else "strong"
    return WeightedBramble(G.n, members, weights, kind)


def grid_cross_certificate(k: int, kind: Kind = "weak") -> WeightedBramble:
    """Weight-1/2 cross family on the k by k grid: member i is row i union
    column i.  Value k/2; vertex (i, j) lies in members i and j only, so
    loads stay at most 1.  For k >= 2 the family is strong as well (crosses
    pairwise meet and span edges), so either kind validates.
    """
    if k < 1:
        raise ValueError(f"grid side must be >= 1, got {k}")
    n = k * k
    members = []
    for i in range(k):
        mask = 0
        for c in range(k):
            mask |= 1 << (i * k + c)
        for rr in range(k):
            mask |= 1 << (rr * k + i)
        members.append(VertexSet.from_mask(n, mask))
    weights = tuple([Fraction(1, 2)] * k)
    wb = WeightedBramble(n, tuple(members), weights, kind)
    validate_weighted_bramble(grid_graph(k), wb)
    return wb
