import json

import pytest
from hypothesis import given, settings, strategies as st

from artifact import bott
from artifact.rootsys import Weight, build_root_system

G2 = build_root_system("G2", 2)


def test_examples():
    assert bott.line_bundle_cohomology(G2, Weight((1, -1))).outcome == "all_zero"
    res = bott.line_bundle_cohomology(G2, Weight((-2, 1)))
    assert (res.degree, res.highest_weight, res.dimension) == (1, Weight((0, 0)), 1)
    res = bott.line_bundle_cohomology(G2, G2.zero())
    assert (res.degree, res.dimension) == (0, 1)
    assert bott.line_bundle_cohomology(G2, -G2.rho).outcome == "all_zero"


def test_weyl_dimension():
    assert bott.weyl_dimension(G2, G2.zero()) == 1
    assert bott.weyl_dimension(G2, Weight((1, 0))) == 7
    assert bott.weyl_dimension(G2, Weight((0, 1))) == 14
    B3 = build_root_system("B", 3)
    assert bott.weyl_dimension(B3, Weight((1, 0, 0))) == 7
    assert bott.weyl_dimension(B3, Weight((0, 0, 1))) == 8
    with pytest.raises(ValueError):
        bott.weyl_dimension(G2, Weight((-1, 0)))


def test_filtered_euler_characteristics():
    S = [Weight(w) for w in [(0, 0), (-2, 1), (1, -1), (-1, 0)]]
    V = [Weight(w) for w in [(1, 0), (-1, 1), (2, -1), (0, 0), (-2, 1), (1, -1), (-1, 0)]]
    assert bott.euler_char_filtered(G2, S) == 0
    assert bott.euler_char_filtered(G2, [G2.zero()]) == 1
    # a trivial bundle with fibre V(w_a) has euler characteristic dim V
    assert bott.euler_char_filtered(G2, [G2.zero()] * 7) == 7
    assert bott.euler_char_filtered(G2, S + V) == bott.euler_char_filtered(G2, S) + bott.euler_char_filtered(G2, V)


def test_bundled_claims():
    verdicts = bott.verify_claims(bott.load_claims())
    assert not [v.claim.name for v in verdicts if v.verdict == "refuted"]
    assert all(v.verdict == "verified" for v in verdicts if v.claim.is_line_bundle)
    undecided = {v.claim.name for v in verdicts if v.verdict == "not_decidable"}
    assert "S vanishes" in undecided


def test_refuted_claim_is_reported(tmp_path):
    path = tmp_path / "claims.json"
    path.write_text(json.dumps([{"name": "O vanishes", "lie_type": "G2", "rank": 2, "weights": [[0, 0]], "assertion": "all_cohomology_zero"}]))
    (v,) = bott.verify_claims(bott.load_claims(path))
    assert v.verdict == "refuted"


def test_malformed_claims():
    with pytest.raises(ValueError):
        bott.claim_from_dict({"name": "x", "lie_type": "G2", "rank": 2, "weights": [], "assertion": "all_cohomology_zero"})
    with pytest.raises(ValueError):
        bott.claim_from_dict({"name": "x", "lie_type": "G2", "rank": 2, "weights": [[0, 0]], "assertion": "whatever"})
    with pytest.raises(ValueError):
        bott.claim_from_dict({"name": "x", "rank": 2})


weights = st.tuples(st.integers(-10, 10), st.integers(-10, 10))


@settings(max_examples=300, deadline=None)
@given(weights)
def test_serre_duality(coords):
    chi = Weight(coords)
    a = bott.line_bundle_cohomology(G2, chi)
    b = bott.line_bundle_cohomology(G2, -chi - G2.rho * 2)
    assert a.outcome == b.outcome
    if a.outcome == "concentrated":
        assert a.degree + b.degree == len(G2.positive_roots)
        assert a.dimension == b.dimension


@settings(max_examples=300, deadline=None)
@given(weights)
def test_singular_or_regular(coords):
    chi = Weight(coords)
    res = bott.line_bundle_cohomology(G2, chi)
    assert (res.outcome == "all_zero") != G2.is_regular(chi + G2.rho)
    if G2.is_dominant(chi):
        assert res.degree == 0


@settings(max_examples=50, deadline=None)
@given(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)))
def test_serre_duality_b3(coords):
    B3 = build_root_system("B", 3)
    chi = Weight(coords)
    a = bott.line_bundle_cohomology(B3, chi)
    b = bott.line_bundle_cohomology(B3, -chi - B3.rho * 2)
    assert a.euler_characteristic == (-1) ** len(B3.positive_roots) * b.euler_characteristic
