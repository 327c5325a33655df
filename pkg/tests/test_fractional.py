"""Exact rational packing: the simplex agrees with an independent float LP,
certificates self-verify, and the two r-integral routes stay in agreement."""

from fractions import Fraction

import pytest

from minorkit import (
    CapacityError,
    CertificateError,
    VertexSet,
    WeightedBramble,
    blowup_complete,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    enumerate_connected_sets,
    evaluate_certificate,
    fractional_hadwiger,
    grid_cross_certificate,
    grid_graph,
    hadwiger_number,
    lp_max_weight,
    path_graph,
    project_blowup_model,
    r_integral_hadwiger_via_blowup,
    r_integral_hadwiger_via_ilp,
    random_gnp,
    validate_weighted_bramble,
)
from minorkit.fractional import packing_lp
from oracles import brute_fractional, lp_float


def test_lp_max_weight_matches_float_solver():
    for seed in range(30):
        G = random_gnp(6, Fraction(1, 2), 10_000 + seed)
        sets = enumerate_connected_sets(G, max_size=3)[:10]
        value, x, y = lp_max_weight(sets)
        ref = lp_float(6, [s.mask for s in sets])
        assert abs(float(value) - ref) < 1e-7
        # primal feasible, dual covering, objectives equal: self-certifying
        assert sum(x, Fraction(0)) == value
        for v in range(6):
            load = sum((xj for s, xj in zip(sets, x) if v in s), Fraction(0))
            assert load <= 1
        for s in sets:
            assert sum((y[v] for v in s.members), Fraction(0)) >= 1
        assert sum(y, Fraction(0)) == value


def test_lp_max_weight_rejects_bad_input():
    with pytest.raises(ValueError):
        lp_max_weight([])
    with pytest.raises(ValueError):
        lp_max_weight([VertexSet(3, [0]), VertexSet(4, [0])])


def test_packing_lp_box_bounds():
    masks = [0b011, 0b110, 0b101]
    base = packing_lp(masks, 3)
    assert base is not None and base[0] == Fraction(3, 2)
    forced = packing_lp(masks, 3, lowers=[1, 0, 0])
    assert forced is not None and forced[0] == 1 and forced[1][0] == 1
    capped = packing_lp(masks, 3, uppers=[0, 0, None])
    assert capped is not None and capped[0] == 1
    assert packing_lp(masks, 3, lowers=[1, 1, 0]) is None
    assert packing_lp(masks, 3, lowers=[1, 0, 0], uppers=[0, None, None]) is None
    assert packing_lp([], 3) == (Fraction(0), [])


def test_fractional_values_frozen():
    cases = [
        (cycle_graph(5), Fraction(3), Fraction(5, 2)),
        (cycle_graph(6), Fraction(3), Fraction(3)),
        (complete_graph(5), Fraction(5), Fraction(5, 2)),
        (complete_graph(6), Fraction(6), Fraction(3)),
        (complete_bipartite_graph(3, 3), Fraction(4), Fraction(3)),
        (path_graph(7), Fraction(2), Fraction(2)),
        (grid_graph(3), Fraction(4), Fraction(7, 2)),
    ]
    for G, weak_want, strong_want in cases:
        for kind, want in (("weak", weak_want), ("strong", strong_want)):
            res = fractional_hadwiger(G, kind)
            assert res.status == "exact"
            assert res.value == want == res.upper_bound
            assert res.certificate is not None
            assert evaluate_certificate(G, res.certificate) == want
            assert res.certificate.kind == kind


def test_fractional_matches_brute_oracle():
    for seed in range(15):
        G = random_gnp(4, Fraction(1, 2), 11_000 + seed)
        for kind, strong in (("weak", False), ("strong", True)):
            res = fractional_hadwiger(G, kind)
            assert res.status == "exact"
            assert abs(float(res.value) - brute_fractional(G, strong)) < 1e-7


def test_dual_cover_certifies_support_optimum():
    for G in (cycle_graph(5), grid_graph(2), complete_graph(4)):
        res = fractional_hadwiger(G, "weak")
        cert, dual = res.certificate, res.dual_cover
        assert cert is not None and dual is not None
        assert sum(dual, Fraction(0)) == res.value
        for s in cert.members:
            assert sum((dual[v] for v in s.members), Fraction(0)) >= 1


def test_capacity_degrades_to_certified_lower_bound():
    g3 = grid_graph(3)
    res = fractional_hadwiger(g3, "weak", max_visits=3)
    assert res.status == "lower-bound"
    assert res.value <= res.upper_bound
    assert res.certificate is not None
    assert evaluate_certificate(g3, res.certificate) == res.value
    res = fractional_hadwiger(g3, "weak", max_candidates=5)
    assert res.status == "lower-bound"
    assert evaluate_certificate(g3, res.certificate) == res.value


def test_validate_weighted_bramble_error_paths():
    C4 = cycle_graph(4)
    ok = WeightedBramble(
        4,
        (VertexSet(4, [0]), VertexSet(4, [1]), VertexSet(4, [2, 3])),
        (Fraction(1), Fraction(1), Fraction(1)),
        "weak",
    )
    validate_weighted_bramble(C4, ok)
    with pytest.raises(CertificateError, match="weights"):
        validate_weighted_bramble(
            C4, WeightedBramble(4, ok.members, (Fraction(1),), "weak")
        )
    with pytest.raises(CertificateError, match="positive fraction"):
        validate_weighted_bramble(
            C4,
            WeightedBramble(4, ok.members, (Fraction(1), Fraction(0), Fraction(1)), "weak"),
        )
    with pytest.raises(CertificateError, match="positive fraction"):
        validate_weighted_bramble(
            C4, WeightedBramble(4, ok.members, (1.0, 1.0, 1.0), "weak")
        )
    with pytest.raises(CertificateError, match="load"):
        validate_weighted_bramble(
            C4,
            WeightedBramble(
                4,
                (VertexSet(4, [0, 1]), VertexSet(4, [1, 2])),
                (Fraction(1), Fraction(1)),
                "weak",
            ),
        )
    # bramble-level defects surface through the same validator
    with pytest.raises(CertificateError, match="do not touch"):
        validate_weighted_bramble(
            C4,
            WeightedBramble(
                4, (VertexSet(4, [0]), VertexSet(4, [2])), (Fraction(1), Fraction(1)), "weak"
            ),
        )


def test_r_integral_routes_agree():
    for seed in range(8):
        G = random_gnp(4, Fraction(1, 2), 12_000 + seed)
        h, _ = hadwiger_number(G)
        for r in (1, 2, 3):
            via_ilp, cert = r_integral_hadwiger_via_ilp(G, r)
            via_blowup, model = r_integral_hadwiger_via_blowup(G, r)
            assert via_ilp == via_blowup
            assert (via_ilp * r).denominator == 1
            if cert is not None:
                assert evaluate_certificate(G, cert) == via_ilp
            if r == 1:
                assert via_ilp == h
        wb = project_blowup_model(G, 2, r_integral_hadwiger_via_blowup(G, 2)[1])
        assert evaluate_certificate(G, wb) == r_integral_hadwiger_via_blowup(G, 2)[0]


def test_r_integral_sandwich():
    for seed in range(6):
        G = random_gnp(5, Fraction(1, 2), 13_000 + seed)
        hf = fractional_hadwiger(G, "weak")
        assert hf.status == "exact"
        vals = [r_integral_hadwiger_via_ilp(G, r)[0] for r in (1, 2, 4)]
        assert vals[0] <= vals[1] <= vals[2] <= hf.value


def test_r_integral_rejects_bad_r():
    with pytest.raises(ValueError):
        r_integral_hadwiger_via_ilp(path_graph(3), 0)
    with pytest.raises(ValueError):
        r_integral_hadwiger_via_blowup(path_graph(3), 0)


def test_project_blowup_model_host_check():
    G = path_graph(3)
    _, model = hadwiger_number(blowup_complete(G, 2))
    with pytest.raises(ValueError):
        project_blowup_model(G, 3, model)


def test_grid_cross_certificate():
    for k in (1, 2, 3, 4):
        wb = grid_cross_certificate(k)
        assert wb.value == Fraction(k, 2)
        assert len(wb.members) == k
        validate_weighted_bramble(grid_graph(k), wb)
    strong = grid_cross_certificate(3, "strong")
    validate_weighted_bramble(grid_graph(3), strong)
    with pytest.raises(CertificateError):
        grid_cross_certificate(1, "strong")
    with pytest.raises(ValueError):
        grid_cross_certificate(0)


def test_strong_value_of_edgeless_graph_is_zero():
    from minorkit import empty_graph

    res = fractional_hadwiger(empty_graph(3), "strong")
    assert res.status == "exact"
    assert res.value == 0
    assert res.certificate is None
