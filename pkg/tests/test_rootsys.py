from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from artifact.rootsys import (
    UnsupportedRootSystem,
    Weight,
    build_root_system,
    chevalley_coeffs,
    coset_poset,
    hat_image,
)

TYPES = [("B", 3), ("B", 4), ("C", 2), ("C", 3), ("C", 4), ("F4", 4), ("G2", 2)]
WEYL_ORDER = {("B", 3): 48, ("B", 4): 384, ("C", 2): 8, ("C", 3): 48, ("C", 4): 384, ("F4", 4): 1152, ("G2", 2): 12}
POSITIVE = {("B", 3): 9, ("B", 4): 16, ("C", 2): 4, ("C", 3): 9, ("C", 4): 16, ("F4", 4): 24, ("G2", 2): 6}


def degree_of(rs, poset):
    """h^dim on G/P, by iterating the Chevalley rule from the bottom class."""
    vec = {0: 1}
    for _ in range(poset.max_length):
        nxt = {}
        for u, c in vec.items():
            for v, k in chevalley_coeffs(rs, poset, u).items():
                nxt[v] = nxt.get(v, 0) + c * k
        vec = nxt
    assert list(vec) == [len(poset) - 1]
    return vec[len(poset) - 1]


@pytest.mark.parametrize("lie,rank", TYPES)
def test_positive_root_count(lie, rank):
    rs = build_root_system(lie, rank)
    assert len(rs.positive_roots) == POSITIVE[(lie, rank)]
    assert rs.longest_element_length == POSITIVE[(lie, rank)]


@pytest.mark.parametrize("lie,rank", TYPES)
def test_maximal_parabolic_sizes_multiply_to_weyl_order(lie, rank):
    rs = build_root_system(lie, rank)
    for i in range(rank):
        poset = coset_poset(rs, [i])
        # |W^P| * |W_P| = |W|, and |W_P| is the Weyl group of the Levi
        levi = build_levi_order(lie, rank, i)
        assert len(poset) * levi == WEYL_ORDER[(lie, rank)]


def build_levi_order(lie, rank, i):
    # Weyl group orders of the Levi factors, worked out by hand
    if lie in ("B", "C"):
        # removing node i splits into A_{i} and B/C_{rank-1-i}
        a = factorial(i + 1)
        rest = rank - 1 - i
        return a * (2**rest * factorial(rest) if rest else 1)
    if lie == "G2":
        return 2
    return {0: 48, 1: 12, 2: 12, 3: 48}[i]


def test_g2_conventions():
    rs = build_root_system("G2", 2)
    alpha, beta = rs.simple_roots
    assert alpha == Weight((2, -1))
    assert beta == Weight((-3, 2))
    assert rs.rho == Weight((1, 1))
    # rho is 5 alpha + 3 beta
    assert alpha * 5 + beta * 3 == rs.rho
    assert rs.weight((-2, 1)) == -alpha


def test_unsupported_type():
    with pytest.raises(UnsupportedRootSystem):
        build_root_system("E", 8)


@pytest.mark.parametrize(
    "lie,rank,i,expected",
    [("G2", 2, 0, 2), ("G2", 2, 1, 18), ("B", 3, 0, 2), ("C", 3, 0, 1), ("B", 3, 2, 2)],
)
def test_degrees_of_homogeneous_spaces(lie, rank, i, expected):
    # Q5 has degree 2, the adjoint G2 variety 18, P^5 degree 1, OG(3,7) = Q6 spinor variety 2
    rs = build_root_system(lie, rank)
    assert degree_of(rs, coset_poset(rs, [i])) == expected


@pytest.mark.parametrize("lie,rank", TYPES)
def test_posets_are_palindromic(lie, rank):
    rs = build_root_system(lie, rank)
    for i in range(rank):
        prof = coset_poset(rs, [i]).length_profile()
        assert prof == prof[::-1]


def test_known_profiles():
    assert coset_poset(build_root_system("C", 3), [1]).length_profile() == [1, 1, 2, 2, 2, 2, 1, 1]
    assert coset_poset(build_root_system("B", 3), [2]).length_profile() == [1, 1, 1, 2, 1, 1, 1]
    assert len(coset_poset(build_root_system("G2", 2), [0])) == 6


def test_dual_is_involution_and_complements_length():
    rs = build_root_system("F4", 4)
    poset = coset_poset(rs, [1])
    for u in range(len(poset)):
        d = poset.dual(u)
        assert poset.dual(d) == u
        assert poset.length(u) + poset.length(d) == poset.max_length


def test_hat_image_drop_is_nonnegative():
    rs = build_root_system("B", 3)
    pY, pZ = coset_poset(rs, [1]), coset_poset(rs, [2])
    for u in range(len(pY)):
        _, drop = hat_image(rs, pY, pZ, u)
        assert drop >= 0


g2_weights = st.tuples(st.integers(-12, 12), st.integers(-12, 12))


@settings(max_examples=200, deadline=None)
@given(g2_weights, st.lists(st.integers(0, 1), max_size=8))
def test_dot_action_is_shifted_linear_action(coords, word):
    rs = build_root_system("G2", 2)
    lam = Weight(coords)
    assert rs.dot_action(word, lam) == rs.act(word, lam + rs.rho) - rs.rho


@settings(max_examples=200, deadline=None)
@given(g2_weights)
def test_to_dominant_lands_in_dominant_chamber(coords):
    rs = build_root_system("G2", 2)
    lam = Weight(coords)
    dom, word = rs.to_dominant(lam)
    assert rs.is_dominant(dom)
    # lam = s_{i1} ... s_{ik}(dom)
    assert rs.act(word, dom) == lam
    if rs.is_regular(lam):
        assert len(word) == rs.element(word).length


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=10))
def test_inverse_and_multiply(word):
    rs = build_root_system("B", 3)
    w = rs.element(word)
    e = rs.multiply(w, rs.inverse(w))
    assert e.length == 0
    assert w.length <= len(word)
