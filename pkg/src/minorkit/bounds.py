"""Inequalities tying the fractional value to the integral one, checked in
exact arithmetic, plus the greedy rounding that turns a weighted certificate
into a clique-minor model.

Square-root bounds are compared in squared form so no irrational number is
ever materialized: value^2 <= 2hn stands in for value <= sqrt(2hn).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import List, Optional, Tuple

from ._bits import bits_of
from .fractional import HadwigerValue, WeightedBramble, fractional_hadwiger, validate_weighted_bramble
from .graphs import Graph, VertexSet
from .minors import CliqueOrder, MinorModel, hadwiger_number, verify_minor_model


@dataclass(frozen=True)
class BoundEntry:
    """One inequality instance: ``lhs <= rhs`` evaluated exactly.

    When the fractional side is only known as an interval, ``exact`` is
    False and ``holds`` reports "not provably violated": the certified lower
    end already exceeding rhs is the only way to fail.
    """

    name: str
    lhs: Fraction
    rhs: Fraction
    holds: bool
    exact: bool = True


@dataclass(frozen=True)
class BoundReport:
    graph_id: str
    n: int
    m: int
    hadwiger: int
    fractional: Fraction
    fractional_status: str
    strong_fractional: Optional[Fraction]
    entries: Tuple[BoundEntry, ...]

    @property
    def all_hold(self) -> bool:
        return all(e.holds for e in self.entries)


def _entry(name: str, lhs: Fraction, rhs: Fraction, exact: bool) -> BoundEntry:
    if exact:
        return BoundEntry(name, lhs, rhs, lhs <= rhs, True)
    # interval case: lhs is the certified lower end; only a lower end past
    # rhs is a provable violation
    return BoundEntry(name, lhs, rhs, not lhs > rhs, False)


def check_sqrt_bound(
    G: Graph,
    *,
    hadwiger: Optional[int] = None,
    fractional: Optional[HadwigerValue] = None,
) -> BoundEntry:
    """fractional^2 <= 2 * hadwiger * n, compared exactly in squared form."""
    h = hadwiger if hadwiger is not None else hadwiger_number(G)[0]
    hf = fractional if fractional is not None else fractional_hadwiger(G, "weak")
    return _entry(
        "fractional_squared<=2hn",
        hf.value * hf.value,
        Fraction(2 * h * G.n),
        hf.status == "exact",
    )


def check_edge_bound(
    G: Graph,
    *,
    hadwiger: Optional[int] = None,
    fractional: Optional[HadwigerValue] = None,
) -> Tuple[BoundEntry, BoundEntry]:
    """fractional^2 <= 3m + 1 and m >= hadwiger choose 2, both exact."""
    h = hadwiger if hadwiger is not None else hadwiger_number(G)[0]
    hf = fractional if fractional is not None else fractional_hadwiger(G, "weak")
    first = _entry(
        "fractional_squared<=3m+1",
        hf.value * hf.value,
        Fraction(3 * G.m + 1),
        hf.status == "exact",
    )
    second = _entry(
        "m>=h_choose_2",
        Fraction(h * (h - 1), 2),
        Fraction(G.m),
        True,
    )
    return first, second


def epsilon_hadwiger_check(G: Graph, eps: Fraction) -> bool:
    """Whether the clique-minor number is at most eps * n, exactly."""
    h, _ = hadwiger_number(G)
    return h <= Fraction(eps) * G.n


def greedy_disjoint_extract(G: Graph, cert: WeightedBramble) -> MinorModel:
    """Round a weighted certificate to a verified clique-minor model.

    Scan members smallest first and keep each one disjoint from everything
    kept so far.  Kept members pairwise touch without sharing vertices, so a
    host edge joins every pair and they are the branch sets of a clique
    model.  Charging discarded weight to the picks' vertex loads shows the
    model order is at least ceil(value^2 / (2n)); that floor is asserted.

    A certificate with no members yields the degenerate order-0 model.
    """
    if not cert.members:
        return MinorModel(G.n, (), CliqueOrder(0))
    validate_weighted_bramble(G, cert)
    ordered = sorted(
        (s.mask for s in cert.members), key=lambda mk: (mk.bit_count(), tuple(bits_of(mk)))
    )
    kept: List[int] = []
    used = 0
    for mk in ordered:
        if mk & used:
            continue
        kept.append(mk)
        used |= mk
    model = MinorModel(
        G.n,
        tuple(VertexSet.from_mask(G.n, mk) for mk in kept),
        CliqueOrder(len(kept)),
    )
    verify_minor_model(G, model)
    v = cert.value
    assert len(kept) >= ceil(v * v / (2 * G.n))
    return model


def bound_report(
    G: Graph,
    *,
    graph_id: str = "",
    include_strong: bool = True,
) -> BoundReport:
    """Evaluate every inequality on one graph; values computed once."""
    h, _ = hadwiger_number(G)
    hf = fractional_hadwiger(G, "weak")
    entries: List[BoundEntry] = [check_sqrt_bound(G, hadwiger=h, fractional=hf)]
    entries.extend(check_edge_bound(G, hadwiger=h, fractional=hf))
    strong_val: Optional[Fraction] = None
    if include_strong:
        hfs = fractional_hadwiger(G, "strong")
        strong_val = hfs.value
        if G.m > 0 and hf.status == "exact" and hfs.status == "exact":
            entries.append(
                _entry("fractional/2<=strong", hf.value / 2, hfs.value, True)
            )
            entries.append(_entry("strong<=fractional", hfs.value, hf.value, True))
    return BoundReport(
        graph_id=graph_id,
        n=G.n,
        m=G.m,
        hadwiger=h,
        fractional=hf.value,
        fractional_status=hf.status,
        strong_fractional=strong_val,
        entries=tuple(entries),
    )
