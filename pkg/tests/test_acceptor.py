import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from caretf.acceptor import (COLUMNS, PAIR_COLUMNS, as_columns, build_r_dfa, ogden_witness,
                             pumped_variants, quasigeodesic_report)
from caretf.automata import ConvWord, convolve, count_accepted, run
from caretf.treecalc import (TreePair, ball, decode_pair, encode_pair, enumerate_reduced_pairs,
                             enumerate_trees, generator, is_reduced, pair_columns, pair_text)
from oracles import reduced_by_definition, tree_pairs, trees


def test_alphabets():
    assert len(COLUMNS) == 48
    assert len(PAIR_COLUMNS) == 36


@pytest.mark.parametrize("text, accepted", [
    ("r,r", True), ("re,er", True), ("ree,rae", True), ("er,re", True),
    ("re,re", False), ("eer,eer", False), ("ree,ree", False),
    ("rr,rr", False), ("r(,ra", False),
])
def test_acceptor_examples(acc, text, accepted):
    assert acc.accepts(text) is accepted


def test_accepts_every_input_form(acc):
    w = convolve(["ree", "rae"])
    assert acc.accepts(w) and acc.accepts(w.columns) and acc.accepts("ree,rae")
    assert as_columns(w) == as_columns("ree,rae")
    assert not acc.accepts(convolve(["r", "re"]))
    with pytest.raises(ValueError):
        acc.accepts("r,re")


@pytest.mark.parametrize("n", range(1, 5))
def test_biconditional_with_definition(acc, n):
    for d, r in itertools.product(enumerate_trees(n), repeat=2):
        p = TreePair(d, r)
        assert acc.accepts(encode_pair(p)) == reduced_by_definition(p)


@settings(max_examples=150, deadline=None)
@given(tree_pairs(12))
def test_biconditional_on_larger_pairs(acc, pair):
    p = TreePair(*pair)
    assert acc.accepts(encode_pair(p)) == is_reduced(p)


@pytest.mark.parametrize("n", range(1, 6))
def test_counts_match_reduced_pairs(acc, n):
    assert count_accepted(acc.f_machine, n) == len(enumerate_reduced_pairs(n))


def test_r_dfa_rejects_common_exposed_carets():
    r = build_r_dfa()
    # the first caret is exposed in both trees when it is followed by exterior carets
    assert not r.accepts(convolve(["eer", "eer"]).columns)
    assert not r.accepts(convolve(["r(a)", "r(a)"]).columns)
    assert r.accepts(convolve(["ree", "rae"]).columns)


def test_non_tree_tracks_are_rejected(acc):
    for top in ("e", "ee", "ra", "r()"):
        assert not acc.accepts(ConvWord(2, tuple(zip(top, "r" + "e" * (len(top) - 1)))))


def test_quasigeodesic_small_balls():
    rep = quasigeodesic_report(4)
    assert len(rep.rows) == len(ball(4))
    assert rep.d_min == Fraction(3, 2)
    assert rep.holds(rep.d_min) and not rep.holds(rep.d_min - Fraction(1, 100))
    assert quasigeodesic_report(0).d_min == 1
    with pytest.raises(ValueError):
        quasigeodesic_report(11)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_ogden_witness(acc, p):
    w = ogden_witness(p)
    assert len(w) == 4 * p + 4
    assert acc.accepts(w)
    assert is_reduced(decode_pair(w))


def test_ogden_pumping_is_rejected(acc):
    variants = pumped_variants(2, 10, seed=3)
    assert len(variants) == 10
    assert len({w for _, w in variants}) == 10
    for label, w in variants:
        assert not acc.accepts(w), label
    with pytest.raises(ValueError):
        ogden_witness(0)


def test_generators_are_normal_forms(acc):
    for s in ("x0", "x1", "x0inv", "x1inv"):
        assert acc.accepts(encode_pair(generator(s)))
        assert pair_columns(generator(s)) == encode_pair(generator(s)).columns
    assert pair_text(generator("x1")) == "ree,rae"


@settings(max_examples=60, deadline=None)
@given(trees(6), trees(6))
def test_trace_ends_with_zero_counters_on_acceptance(acc, d, r):
    res = run(acc.f_machine, encode_pair(TreePair(d, r)).columns, trace=True)
    assert len(res.trace) == 7
    if res.accepted:
        assert res.trace[-1].counters == (0, 0)


def test_every_element_of_a_ball_is_accepted(acc):
    for key, (g, _) in ball(6).items():
        assert acc.accepts(key), key
        assert pair_text(g) == key
