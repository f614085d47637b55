from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smcloc.coxeter import RootDatum, beta_sequence, bruhat_leq, cartan_matrix, format_word, parse_word

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "G2": 12, "GL4": 24}


@pytest.mark.parametrize("name,order", sorted(ORDERS.items()))
def test_group_orders(name, order):
    D = RootDatum.parse(name)
    E = D.elements()
    assert len(E) == order == len(set(E))
    assert len(D.positive_roots) == D.longest().length
    assert sum(1 for w in E if w.length == 1) == D.rank


def test_f4_root_count():
    assert len(RootDatum.parse("F4").positive_roots) == 24


@pytest.mark.parametrize("text", ["Z3", "A0", "GL1", "E5", "cartan:2,1;1,2", "cartan:2,-2;-2,2", "cartan:2,-1;0,2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        RootDatum.parse(text)


def test_cartan_orientation():
    # alpha_2 short in B2, long in C2
    assert cartan_matrix("B", 2) == ((2, -1), (-2, 2))
    assert cartan_matrix("C", 2) == ((2, -2), (-1, 2))


def test_explicit_cartan_matches_named_type():
    D = RootDatum.parse("cartan:2,-1;-1,2")
    assert len(D.elements()) == 6


def test_words_round_trip():
    assert parse_word("s3.s4.s3.s2") == (3, 4, 3, 2)
    assert parse_word("e") == ()
    assert format_word(()) == "e"
    with pytest.raises(ValueError):
        parse_word("s3.x")


def test_lengths():
    assert RootDatum.parse("A2").identity.length == 0
    assert RootDatum.parse("A2").longest().length == 3
    D = RootDatum.parse("A4")
    assert D.parse_elem("s3.s4.s3.s2").length == 4


def _subword_oracle(u, w) -> bool:
    word = w.word
    D = w.datum
    return any(D.from_word([i for i, b in zip(word, mask) if b]) == u
               for mask in product((0, 1), repeat=len(word)))


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_bruhat_matches_subword_criterion(name):
    D = RootDatum.parse(name)
    E = D.elements()
    for u in E:
        for w in E:
            assert bruhat_leq(u, w) == _subword_oracle(u, w), (u, w)


def test_bruhat_small_cases():
    D = RootDatum.parse("A2")
    assert not bruhat_leq(D.s(1), D.s(2))
    assert all(bruhat_leq(D.identity, w) for w in D.elements())


def test_bruhat_is_a_partial_order():
    D = RootDatum.parse("B2")
    E = D.elements()
    for u in E:
        assert bruhat_leq(u, u)
        for w in E:
            if bruhat_leq(u, w) and bruhat_leq(w, u):
                assert u == w
            if bruhat_leq(u, w):
                assert u.length <= w.length
                for x in E:
                    if bruhat_leq(w, x):
                        assert bruhat_leq(u, x)


def test_minimal_coset_reps():
    D = RootDatum.parse("A2")
    assert D.minimal_coset_reps({1, 2}) == [D.identity]
    assert sorted(D.minimal_coset_reps(set())) == sorted(D.elements())
    reps = D.minimal_coset_reps({2})
    assert sorted(r.length for r in reps) == [0, 1, 2]


@pytest.mark.parametrize("name,P", [("A3", {1}), ("A3", {2}), ("A3", {1, 3}), ("B3", {2, 3}), ("G2", {1})])
def test_coset_decomposition(name, P):
    D = RootDatum.parse(name)
    reps, levi = D.minimal_coset_reps(P), D.parabolic_subgroup(P)
    products = {z * x for z in reps for x in levi}
    assert len(products) == len(reps) * len(levi) == len(D.elements())
    for z in reps:
        for x in levi:
            assert (z * x).length == z.length + x.length


def test_beta_sequence():
    D = RootDatum.parse("A2")
    assert beta_sequence(D, (1,)) == [D.alpha(1)]
    assert beta_sequence(D, (1, 2)) == [D.alpha(1), D.from_alpha((1, 1))]
    assert sorted(beta_sequence(D, D.longest().word)) == sorted(D.positive_roots)


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_beta_sequence_is_inversion_set(name):
    D = RootDatum.parse(name)
    for w in D.elements():
        betas = beta_sequence(D, w.word)
        assert len(set(betas)) == w.length
        winv = w.inverse()
        assert all(not D.is_positive(winv.act(b)) for b in betas)


words = st.lists(st.integers(1, 3), max_size=10)


@given(words, words)
def test_group_law_b3(a, b):
    D = RootDatum.parse("B3")
    x, y = D.from_word(a), D.from_word(b)
    assert D.from_word(a + b) == x * y
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert (x * x.inverse()).is_identity


@given(words)
def test_descents_agree_with_length(a):
    D = RootDatum.parse("A3")
    w = D.from_word(a)
    for i in w.simple_indices:
        assert w.has_right_descent(i) == (w.rmul(i).length < w.length)
        assert w.has_left_descent(i) == (w.lmul(i).length < w.length)
        assert abs(w.rmul(i).length - w.length) == 1


@given(words)
def test_reduced_word_is_reduced(a):
    D = RootDatum.parse("C3")
    w = D.from_word(a)
    assert len(w.word) == w.length
    assert D.from_word(w.word) == w
