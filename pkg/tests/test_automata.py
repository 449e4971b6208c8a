import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from caretf.acceptor import build_m_int, build_m_tree
from caretf.automata import (ANY, DEC, INC, NOP, PAD, POS, RESET, ZERO, Alphabet, AlphabetError,
                             AutomatonError, ConvWord, Dfa, DeterminismError,
                             ExplicitCounterMachine, Nfa, audit_determinism, complement, concat,
                             conv_product, convolve, count_accepted, deconvolve, determinize,
                             intersect, pattern_nfa, product_counter_counter, product_counter_dfa,
                             run, run_counter_machine, shifted_copy_dfa, to_dot, union,
                             universal_machine)
from oracles import catalan

SIGMA_INT = "()ab"
SIGMA_T = "er()ab"


def words(alphabet, max_len):
    for n in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield "".join(w)


def l_int_by_conditions(w):
    """Balanced-prefix positions start with ( or a, and ( and ) balance."""
    depth = 0
    for x in w:
        if depth == 0 and x not in "(a":
            return False
        depth += {"(": 1, ")": -1}.get(x, 0)
    return depth == 0


def even_dfa(alphabet):
    return Dfa(alphabet, 0, lambda q, x: 1 - q, lambda q: q == 0, "even")


def balance_machine():
    """|w|_( = |w|_a with one counter and a sign bit."""
    table = {}
    for sign in "+-":
        up, down = ("(", "a") if sign == "+" else ("a", "(")
        table[(sign, up)] = [((ANY,), sign, (INC,))]
        other = "-" if sign == "+" else "+"
        table[(sign, down)] = [((POS,), sign, (DEC,)), ((ZERO,), other, (INC,))]
        for x in ")b":
            table[(sign, x)] = [((ANY,), sign, (NOP,))]
    return ExplicitCounterMachine(1, SIGMA_INT, "+-", "+", "+-", table, name="balance")


# --- convolutions ----------------------------------------------------------


@pytest.mark.parametrize("words_in, columns", [
    (["aa", "bbb", "a"], (("a", "b", "a"), ("a", "b", PAD), (PAD, "b", PAD))),
    (["", ""], ()),
    (["re", "er"], (("r", "e"), ("e", "r"))),
])
def test_convolve_examples(words_in, columns):
    assert convolve(words_in).columns == columns


def test_convolve_rejects_pad_and_foreign_letters():
    with pytest.raises(ValueError):
        convolve(["a" + PAD])
    with pytest.raises(AlphabetError):
        convolve(["ax"], alphabet=Alphabet(("a",)))


def test_convword_invariants():
    with pytest.raises(ValueError):
        ConvWord(2, ((PAD, PAD),))
    with pytest.raises(ValueError):
        ConvWord(2, (("a", PAD), ("a", "b")))
    with pytest.raises(ValueError):
        ConvWord(2, (("a",),))


def test_alphabet_rules():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("a", PAD))
    assert len(Alphabet(tuple("ab")).columns(2)) == 8


@given(st.lists(st.text("abc", max_size=6), min_size=1, max_size=4))
def test_convolve_roundtrip(ws):
    cw = convolve(ws)
    assert ["".join(t) for t in deconvolve(cw)] == ws


# --- counter machines ------------------------------------------------------


@pytest.mark.parametrize("word, accepted", [("()", True), ("", True), ("b", False),
                                            ("(ab)", True), ("()b", False), ("(", False)])
def test_m_int_runs(word, accepted):
    assert run_counter_machine(build_m_int(), word).accepted is accepted


def test_m_int_language_matches_conditions():
    m = build_m_int()
    for w in words(SIGMA_INT, 7):
        assert run(m, w).accepted == l_int_by_conditions(w), w


def test_trace_records_counters():
    res = run(build_m_int(), "(()a)", trace=True)
    assert [s.counters[0] for s in res.trace] == [0, 1, 2, 1, 1, 0]
    assert res.accepted and res.state == "q"


def test_run_rejects_letters_outside_alphabet():
    with pytest.raises(AlphabetError):
        run(build_m_int(), "(x)")


def test_unguarded_decrement_is_a_construction_error():
    with pytest.raises(AutomatonError):
        ExplicitCounterMachine(1, "a", {0}, 0, {0}, {(0, "a"): [((ANY,), 0, (DEC,))]})


def test_overlapping_guards_are_reported():
    table = {(0, "a"): [((ANY,), 0, (INC,)), ((POS,), 0, (NOP,))]}
    m = ExplicitCounterMachine(1, "a", {0}, 0, {0}, table)
    assert len(audit_determinism(m)) == 1
    with pytest.raises(DeterminismError):
        run(m, "aa")


def test_reset_clears_a_counter():
    table = {(0, "a"): [((ANY,), 0, (INC,))], (0, "z"): [((ANY,), 0, (RESET,))]}
    m = ExplicitCounterMachine(1, "az", {0}, 0, {0}, table)
    assert not run(m, "aaa").accepted
    assert run(m, "aaaz").accepted


def test_shipped_small_machines_are_deterministic():
    assert audit_determinism(build_m_int()) == []
    assert audit_determinism(build_m_tree()) == []


def test_product_with_even_length():
    m = product_counter_dfa(build_m_int(), even_dfa(SIGMA_INT))
    assert m.counters == 1
    assert run(m, "()").accepted and not run(m, "a").accepted
    for w in words(SIGMA_INT, 4):
        assert run(m, w).accepted == (l_int_by_conditions(w) and len(w) % 2 == 0)


def test_product_with_all_and_nothing():
    everything = Dfa(SIGMA_INT, 0, lambda q, x: 0, lambda q: True)
    nothing = Dfa(SIGMA_INT, 0, lambda q, x: 0, lambda q: False)
    for w in words(SIGMA_INT, 4):
        assert run(product_counter_dfa(build_m_int(), everything), w).accepted == \
            l_int_by_conditions(w)
        assert not run(product_counter_dfa(build_m_int(), nothing), w).accepted


def test_product_of_counter_machines():
    twice = product_counter_counter(build_m_int(), build_m_int())
    assert twice.counters == 2
    both = product_counter_counter(build_m_int(), balance_machine())
    for w in words(SIGMA_INT, 5):
        want = l_int_by_conditions(w) and w.count("(") == w.count("a")
        assert run(both, w).accepted == want, w
        assert run(twice, w).accepted == l_int_by_conditions(w)
    # direct counts: "(a)" satisfies both conditions, "(a)a" has two a's
    assert run(both, "(a)").accepted
    assert not run(both, "(a)a").accepted
    assert not run(both, "b()").accepted


@pytest.mark.parametrize("top, bottom, accepted", [
    ("re", "er", True), ("r", "r", True), ("rr", "r", False), ("r", "re", True),
])
def test_conv_product_of_tree_machines(top, bottom, accepted):
    m = conv_product(build_m_tree(), build_m_tree())
    assert m.counters == 2
    assert run(m, convolve([top, bottom]).columns).accepted is accepted


def test_conv_product_is_trackwise_acceptance():
    ab = "xy"
    m1 = even_dfa(ab)
    table = {(0, "x"): [((ANY,), 0, (INC,))], (0, "y"): [((POS,), 0, (DEC,))]}
    m2 = ExplicitCounterMachine(1, ab, {0}, 0, {0}, table)
    m = conv_product(m1, m2)
    all_words = list(words(ab, 5))
    for u in all_words:
        for v in all_words:
            if not u and not v:
                continue
            want = run(m1, u).accepted and run(m2, v).accepted
            assert run(m, convolve([u, v]).columns).accepted == want, (u, v)


def test_count_accepted_matches_filtering():
    m_tree = build_m_tree()
    assert count_accepted(m_tree, 1) == 1
    assert count_accepted(build_m_int(), 0) == 1
    for n in range(5):
        brute = sum(run(m_tree, w).accepted for w in itertools.product(SIGMA_T, repeat=n))
        assert count_accepted(m_tree, n) == brute


@pytest.mark.parametrize("n", range(1, 11))
def test_tree_words_are_counted_by_catalan(n):
    assert count_accepted(build_m_tree(), n) == catalan(n)


# --- finite automata -------------------------------------------------------


def _contains_ab():
    n = pattern_nfa("ab", [("ab", "*"), ("a", "1"), ("b", "1"), ("ab", "*")])
    return determinize(n)


def test_dfa_boolean_operations():
    d = _contains_ab()
    e = even_dfa("ab")
    for w in words("ab", 5):
        assert complement(complement(d)).accepts(w) == d.accepts(w)
        assert not intersect(d, complement(d)).accepts(w)
        assert intersect(d, e).accepts(w) == (d.accepts(w) and e.accepts(w))
        assert union(d, e).accepts(w) == (d.accepts(w) or e.accepts(w))
        assert d.accepts(w) == ("ab" in w)


def test_concat_and_nfa():
    starts_a = determinize(pattern_nfa("ab", [("a", "1")]))
    d = concat(starts_a, _contains_ab())
    n = Nfa("ab", {0}, [(0, "a", 1), (1, "b", 2)], {2}, eps=[(0, 1)])
    for w in words("ab", 5):
        assert d.accepts(w) == (w[:1] == "a" and "ab" in w[1:])
        assert n.accepts(w) == (w in ("ab", "b"))


def test_concat_builds_leading_column_then_shift():
    lam = Alphabet(tuple("ab"))
    first = determinize(pattern_nfa(lam.columns(2), [({("a", "a")}, "1")]))
    d = concat(first, shifted_copy_dfa(["b"], lam))
    assert d.accepts(convolve(["aab", "abab"]).columns)
    assert not d.accepts(convolve(["aab", "aab"]).columns)


def test_shifted_copy_small_cases():
    lam = Alphabet(tuple("er"))
    d = shifted_copy_dfa(["e"], lam)
    assert d.accepts(convolve(["r", "er"]).columns)
    assert not d.accepts(convolve(["r", "re"]).columns)
    assert d.accepts(convolve(["", "e"]).columns)


def test_shifted_copy_against_string_equality():
    lam = Alphabet(tuple("abc"))
    d = shifted_copy_dfa(list("ab"), lam)
    rng = random.Random(7)
    rejected = 0
    for _ in range(200):
        w = "".join(rng.choice("abc") for _ in range(rng.randrange(7)))
        assert d.accepts(convolve([w, "ab" + w]).columns)
        v = list("ab" + w)
        i = rng.randrange(len(v))
        v[i] = rng.choice([x for x in "abc" if x != v[i]])
        if rng.random() < 0.3:
            v.append(rng.choice("abc"))
        v = "".join(v)
        if v != "ab" + w:
            assert not d.accepts(convolve([w, v]).columns)
            rejected += 1
    assert rejected >= 50


def test_universal_machine_and_dot():
    m = universal_machine("ab", name="all")
    assert run(m, "abba").accepted
    dot = to_dot(build_m_int(), state_names=str)
    assert dot.startswith('digraph "m_int"') and "doublecircle" in dot
