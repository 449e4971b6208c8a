import random

import pytest
from hypothesis import given, settings

from caretf.acceptor import PAIR_COLUMNS
from caretf.automata import PAD, run
from caretf.multipliers import (LETTERS, build_case5b_machine, build_k1_l1, classify_x0, classify_x1,
                                mult_input, x0_case_dfas, x1_case_dfas)
from caretf.treecalc import (IDENTITY, TreePair, decode_pair, enumerate_reduced_pairs, generator,
                             multiply, pair_columns, reduce)
from caretf.verify import accepted_partners
from oracles import product_matches, tree_pairs

GENERATORS = ("x0", "x1", "x0inv", "x1inv")


def cols(text):
    top, bottom = text.split(",")
    return tuple(zip(top, bottom))


def accepts(m, u, v):
    return run(m, mult_input(u, v)).accepted


def test_letter_alphabet():
    assert len(LETTERS) == 37 * 37 - 1
    assert (PAD, PAD) not in LETTERS


def test_mult_input_pads_the_shorter_track():
    u, v = cols("r,r"), cols("re,er")
    assert mult_input(u, v) == ((("r", "r"), ("r", "e")), (PAD, ("e", "r")))


def test_counter_counts(mult, acc):
    assert acc.f_machine.counters == 2
    assert mult.l_x0.counters == 2 and mult.l_x0inv.counters == 2
    assert mult.l_x1.counters == 3 and mult.l_x1inv.counters == 3
    assert mult.case5b.counters == 1


@pytest.mark.parametrize("u, v, s, accepted", [
    ("r,r", "re,er", "x0", True),
    ("r,r", "ree,rae", "x1", True),
    ("re,er", "r,r", "x0inv", True),
    ("re,er", "r,r", "x0", False),
    ("r,r", "er,re", "x0", False),
    ("r,r", "er,re", "x0inv", True),
    ("r,r", "rae,ree", "x1inv", True),
    ("ree,rae", "r,r", "x1inv", True),
])
def test_small_products(mult, u, v, s, accepted):
    assert accepts(mult.machine(s), cols(u), cols(v)) is accepted


def test_identity_times_x0_uses_case_one():
    g = IDENTITY
    assert classify_x0(g) == "1"
    w = mult_input(pair_columns(g), pair_columns(multiply(g, generator("x0"))))
    hits = [k for k, d in x0_case_dfas().items() if d.accepts(w)]
    assert hits == ["1"]


@pytest.mark.parametrize("s", GENERATORS)
@pytest.mark.parametrize("n", range(1, 6))
def test_multiplier_accepts_oracle_products(mult, s, n):
    m = mult.machine(s)
    gen = generator(s)
    for g in enumerate_reduced_pairs(n):
        h = multiply(g, gen)
        assert product_matches(g, gen, h)
        assert accepts(m, pair_columns(g), pair_columns(h))


@settings(max_examples=40, deadline=None)
@given(tree_pairs(14))
def test_multipliers_on_larger_elements(mult, pair):
    g = reduce(TreePair(*pair))
    for s in GENERATORS:
        h = multiply(g, generator(s))
        assert accepts(mult.machine(s), pair_columns(g), pair_columns(h))


@pytest.mark.parametrize("s", GENERATORS)
def test_mutations_are_rejected(mult, s):
    m = mult.machine(s)
    rng = random.Random(s)
    gen = generator(s)
    elements = [g for n in range(1, 6) for g in enumerate_reduced_pairs(n)]
    for _ in range(200):
        g = rng.choice(elements)
        right = list(pair_columns(multiply(g, gen)))
        i = rng.randrange(len(right))
        right[i] = rng.choice([c for c in PAIR_COLUMNS if c != right[i]])
        assert not accepts(m, pair_columns(g), tuple(right))


@pytest.mark.parametrize("s", GENERATORS)
def test_unique_partner(mult, s):
    m = mult.machine(s)
    for n in range(1, 5):
        for g in enumerate_reduced_pairs(n):
            want = pair_columns(multiply(g, generator(s)))
            assert accepted_partners(m, pair_columns(g)) == [want]


def test_inverse_multiplier_swaps_tracks(mult):
    for n in range(1, 5):
        for g in enumerate_reduced_pairs(n):
            u, v = pair_columns(g), pair_columns(multiply(g, generator("x1")))
            assert accepts(mult.l_x1inv, v, u)
            assert accepts(mult.l_x1, u, v)


@pytest.mark.parametrize("n", range(1, 6))
def test_case_templates_match_tree_classification(n):
    x0c, x1c = x0_case_dfas(), x1_case_dfas()
    fig = build_case5b_machine()
    for g in enumerate_reduced_pairs(n):
        w0 = mult_input(pair_columns(g), pair_columns(multiply(g, generator("x0"))))
        assert [k for k, d in x0c.items() if d.accepts(w0)] == [classify_x0(g)]
        w1 = mult_input(pair_columns(g), pair_columns(multiply(g, generator("x1"))))
        hits = [k for k, d in x1c.items() if d.accepts(w1) and (k != "5b" or run(fig, w1).accepted)]
        assert hits == [classify_x1(g)]


def test_every_x1_case_occurs():
    seen = {classify_x1(g) for n in range(1, 6) for g in enumerate_reduced_pairs(n)}
    assert seen == {"1", "2a", "2b", "2c", "3", "4", "5a", "5b"}
    seen0 = {classify_x0(g) for n in range(1, 4) for g in enumerate_reduced_pairs(n)}
    assert seen0 == {"1", "2", "3"}


def test_case5b_machine_shape():
    m = build_case5b_machine()
    assert m.states == frozenset(f"q{i}" for i in range(6))
    assert m.start == "q0" and m.final == frozenset({"q4"})


def test_unknown_generator(mult):
    with pytest.raises(ValueError):
        mult.machine("x2")
    assert mult.machine("x0^-1") is mult.l_x0inv


def test_x1_branches_agree(mult):
    for n in range(1, 4):
        for g in enumerate_reduced_pairs(n):
            u = pair_columns(g)
            merged = set(accepted_partners(mult.l_x1, u))
            parts = set()
            for m in (mult.n, mult.l1, mult.l2):
                parts |= set(accepted_partners(m, u))
            assert merged == parts


def test_decoded_partner_is_the_product(mult):
    g = decode_pair("r()e,reee")
    (v,) = accepted_partners(mult.l_x1, pair_columns(g))
    assert decode_pair(tuple("".join(t) for t in zip(*v))) == multiply(g, generator("x1"))


def test_k1_l1_pair():
    k1, l1 = build_k1_l1()
    assert l1.counters == 2
    g = decode_pair("r()e,reee")
    w = mult_input(pair_columns(g), pair_columns(multiply(g, generator("x1"))))
    assert not k1.accepts(w) and not run(l1, w).accepted
    g = decode_pair("rae,eer")
    w = mult_input(pair_columns(g), pair_columns(multiply(g, generator("x1"))))
    assert k1.accepts(w) and run(l1, w).accepted
