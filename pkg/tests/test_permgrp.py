"""Permutation groups: certified chains checked against brute-force oracles."""

import numpy as np
import pytest

from pimcheck import permgrp
from pimcheck.permgrp import (
    GenSet,
    MembershipError,
    NotAPermutationError,
    SizeLimitError,
    burnside_rank,
    compose,
    coset_action,
    enumerate_elements,
    inverse,
    orbits_of,
    parse_cycles,
    perm_order,
    permutation_rank,
    schreier_sims,
    to_cycles,
)

# name, degree, generator cycle strings, order
GROUP_TABLE = [
    ("C7", 7, ["(1 2 3 4 5 6 7)"], 7),
    ("S4", 4, ["(1 2)", "(1 2 3 4)"], 24),
    ("A4", 4, ["(1 2 3)", "(2 3 4)"], 12),
    ("D8", 8, ["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)"], 16),
    ("A5", 5, ["(1 2 3 4 5)", "(1 2 3)"], 60),
    ("S6", 6, ["(1 2)", "(1 2 3 4 5 6)"], 720),
    ("L2(7)", 8, ["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 8)(2 7)(3 4)(5 6)"], 168),
    ("M11", 11, ["(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)"], 7920),
]


def make(name):
    for nm, degree, cycles, order in GROUP_TABLE:
        if nm == name:
            return GenSet.from_cycles(degree, cycles, nm), order
    raise KeyError(name)


def test_cycle_notation_round_trip():
    rng_texts = ["(1 2 3)(4 5)", "(2 4)(3 5)", "()", "(1 5 4 3 2)"]
    for text in rng_texts:
        perm = parse_cycles(text, 6)
        assert np.array_equal(parse_cycles(to_cycles(perm), 6), perm)


def test_cycle_parse_errors():
    with pytest.raises(NotAPermutationError):
        parse_cycles("(1 2 2)", 5)
    with pytest.raises(NotAPermutationError):
        parse_cycles("(1 2)(2 3)", 5)
    with pytest.raises(NotAPermutationError):
        parse_cycles("(0 1)", 5)
    with pytest.raises(NotAPermutationError):
        parse_cycles("(1 6)", 5)
    with pytest.raises(NotAPermutationError):
        parse_cycles("(1 2) junk", 5)


def test_compose_and_inverse_identities():
    a = parse_cycles("(1 2 3)(4 5)", 6)
    b = parse_cycles("(2 6)(3 4 5)", 6)
    ident = permgrp.identity_perm(6)
    assert np.array_equal(compose(a, inverse(a)), ident)
    assert np.array_equal(compose(inverse(a), a), ident)
    # composition is left-to-right: (a*b)(x) == b(a(x))
    x = 0
    assert compose(a, b)[x] == b[a[x]]
    assert perm_order(compose(a, inverse(a))) == 1


@pytest.mark.parametrize("name,degree,cycles,order", GROUP_TABLE)
def test_bsgs_order_matches_closure_oracle(name, degree, cycles, order):
    """Certified chain order equals exhaustive closure enumeration."""
    gs = GenSet.from_cycles(degree, cycles, name)
    bsgs = schreier_sims(gs)
    assert bsgs.order == order
    elements = enumerate_elements(gs, limit=10000)
    assert len(elements) == order
    for e in elements:
        assert bsgs.contains(e)


def test_membership_rejects_outsiders():
    a5, _ = make("A5")
    bsgs = schreier_sims(a5)
    odd = parse_cycles("(1 2)", 5)
    assert not bsgs.contains(odd)
    assert bsgs.contains(parse_cycles("(1 2)(3 4)", 5))


def test_base_hint_gives_readable_stabilizer_prefix():
    """With a hinted base, strong_gens_fixing(k) generates a point stabilizer."""
    s6, order = make("S6")
    bsgs = schreier_sims(s6, base_hint=[0, 1])
    assert list(bsgs.base[:2]) == [0, 1]
    stab0 = GenSet(6, tuple(bsgs.strong_gens_fixing(1)), "stab0")
    assert schreier_sims(stab0).order == order // 6
    stab01 = GenSet(6, tuple(bsgs.strong_gens_fixing(2)), "stab01")
    assert schreier_sims(stab01).order == order // 30


def test_schreier_sims_seed_independence():
    gs, order = make("M11")
    for seed in [1, 2, 77]:
        assert schreier_sims(gs, seed=seed).order == order


def test_orbits_of_labels_points():
    c5 = [parse_cycles("(1 2 3 4 5)", 7)]
    labels, count = orbits_of(c5, 7)
    assert count == 3
    assert len(set(labels[:5])) == 1
    assert labels[5] != labels[0] and labels[6] != labels[0]


COSET_TABLE = [
    ("A5", ["(1 2 3 4 5)"], 12),          # C5
    ("A5", ["(1 2 3 4 5)", "(2 5)(3 4)"], 6),   # D5
    ("A5", ["(1 2 3)", "(1 2)(4 5)"], 10),      # S3 on {1,2,3} x {4,5}
    ("L2(7)", ["(1 2 3 4 5 6 7)"], 24),         # C7
]


@pytest.mark.parametrize("gname,hcycles,index", COSET_TABLE)
def test_coset_action_index_and_homomorphism(gname, hcycles, index):
    """Coset count matches the order quotient and images compose correctly."""
    g, order = make(gname)
    h = GenSet.from_cycles(g.degree, hcycles, "H")
    hb = schreier_sims(h)
    assert order % hb.order == 0 and order // hb.order == index
    act = coset_action(g, hb)
    assert act.index == index
    a, b = g.gens[0], g.gens[-1]
    img_ab = act.image_of_element(compose(a, b))
    assert np.array_equal(
        img_ab, compose(act.image_of_element(a), act.image_of_element(b))
    )
    ident = act.image_of_element(permgrp.identity_perm(g.degree))
    assert np.array_equal(ident, np.arange(index))


def test_coset_action_respects_size_limit():
    g, _ = make("M11")
    h = GenSet.from_cycles(11, ["(1 2 3 4 5 6 7 8 9 10 11)"], "C11")
    with pytest.raises(SizeLimitError):
        coset_action(g, schreier_sims(h), max_index=100)


def pair_orbit_rank(act):
    """Rank counted a third way: G-orbits on ordered pairs of cosets."""
    n = act.index
    pair_images = []
    for img in act.gen_images:
        grid = (img[:, None] * n + img[None, :]).reshape(-1)
        pair_images.append(grid)
    _, count = orbits_of(pair_images, n * n)
    return count


@pytest.mark.parametrize("gname,hcycles,index", COSET_TABLE)
def test_rank_three_ways(gname, hcycles, index):
    """H-orbit count, Burnside average, and pair-orbit count all agree."""
    g, _ = make(gname)
    h = GenSet.from_cycles(g.degree, hcycles, "H")
    hb = schreier_sims(h)
    act = coset_action(g, hb)
    r1 = permutation_rank(act, list(h.gens))
    r2 = burnside_rank(act, enumerate_elements(h, limit=10000))
    r3 = pair_orbit_rank(act)
    assert r1 == r2 == r3


P_REGULAR_TABLE = [
    ("A5", 2, 4),   # classes of orders 1, 3, 5, 5
    ("A5", 3, 4),   # classes of orders 1, 2, 5, 5
    ("A5", 5, 3),   # classes of orders 1, 2, 3
    ("S4", 2, 2),   # classes of orders 1, 3
    ("C7", 7, 1),
]


@pytest.mark.parametrize("gname,p,expected", P_REGULAR_TABLE)
def test_p_regular_class_count(gname, p, expected):
    g, _ = make(gname)
    assert permgrp.p_regular_class_count(g, p) == expected


def test_membership_error_carries_witness():
    g, _ = make("A5")
    h = GenSet.from_cycles(5, ["(1 2)"], "bad")
    act_h = schreier_sims(h)
    assert act_h.order == 2
    err = MembershipError("no", witness=h.gens[0])
    assert err.witness is h.gens[0]


def test_genset_validates_permutations():
    with pytest.raises(NotAPermutationError):
        GenSet(3, (np.array([0, 0, 1], dtype=np.int64),), "broken")
