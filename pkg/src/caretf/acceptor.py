"""The normal-form language 𝓕 as a 2-counter machine.

``𝓕 = L_TT ∩ R``: ``L_TT`` holds the convolutions ⊗(u, v) of two tree words
of equal length, and ``R`` is the regular language of convolutions that
show no caret pair exposed in both trees.  A word of 𝓕 is ν(g) for exactly
one group element g.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .automata import (ANY, DEC, INC, NOP, POS, ZERO, Alphabet, ConvWord, CounterMachine, Dfa,
                       ExplicitCounterMachine, ProductMachine, complement, conv_product,
                       determinize, pattern_nfa, product_counter_dfa, run, union_nfa)
from .treecalc import (EXT, MAX_RADIUS, OPEN, CLOSE, A, B, ROOT, SIGMA_INT, SIGMA_T, ball,
                       pair_columns, split_pair_text)

COLUMNS = Alphabet(SIGMA_T).columns(2)
PAIR_COLUMNS = tuple((x, y) for x in SIGMA_T for y in SIGMA_T)

# counter instructions for interior letters: (guard, op)
INTERIOR_RULES = {
    OPEN: (ANY, INC),
    A: (ANY, NOP),
    CLOSE: (POS, DEC),
    B: (POS, NOP),
}


def build_m_int() -> ExplicitCounterMachine:
    """One state, one counter: the counter is the number of unmatched
    ``(``; ``)`` and ``b`` need it positive."""
    table = {("q", x): [((g,), "q", (o,))] for x, (g, o) in INTERIOR_RULES.items()}
    return ExplicitCounterMachine(1, SIGMA_INT, {"q"}, "q", {"q"}, table, name="m_int")


def build_m_tree() -> ExplicitCounterMachine:
    """Tree words.  ``E``/``I`` states say whether the last letter was
    exterior or we are inside an interior block; the digit records whether
    ``r`` has been read.  Inside a block the counter runs the interior
    rules, and the block may only end at counter zero."""
    states = {"start", "E0", "E1", "I0", "I1"}
    table: dict = {}

    def add(q, x, guard, target, op):
        table.setdefault((q, x), []).append(((guard,), target, (op,)))

    add("start", EXT, ANY, "E0", NOP)
    add("start", ROOT, ANY, "E1", NOP)
    for seen in "01":
        e_state, i_state = "E" + seen, "I" + seen
        add(e_state, EXT, ANY, e_state, NOP)
        add(e_state, OPEN, ANY, i_state, INC)
        add(e_state, A, ANY, i_state, NOP)
        for x, (g, o) in INTERIOR_RULES.items():
            add(i_state, x, g, i_state, o)
        add(i_state, EXT, ZERO, e_state, NOP)
    add("E0", ROOT, ANY, "E1", NOP)
    add("I0", ROOT, ZERO, "E1", NOP)
    return ExplicitCounterMachine(1, SIGMA_T, states, "start", {"E1"}, table, name="m_tree")


def no_pad_dfa() -> Dfa:
    letters = set(PAIR_COLUMNS)
    return Dfa(COLUMNS, 0, lambda q, x: 0 if x in letters else None, lambda q: True, "no_pad")


def build_l_tt() -> ProductMachine:
    """⊗(u, v) with u, v tree words of the same length; 2 counters."""
    m_tree = build_m_tree()
    return product_counter_dfa(conv_product(m_tree, m_tree), no_pad_dfa(), name="l_tt")


def _cols(tops, bottoms):
    return frozenset((x, y) for x in tops for y in bottoms)


def build_r_dfa() -> Dfa:
    """Convolutions with no caret pair exposed in both trees.

    Complement of three patterns: the word begins ``(e,e)(y,y')``, ends
    ``(x,x')(e,e)``, or contains ``(x,x')(y,y')`` with x, x' ∈ {e,r,(,b}
    and y, y' ∈ {),a}.
    """
    anything = frozenset(COLUMNS)
    ext = _cols("er", "er")
    ee = _cols("e", "e")
    before = _cols("er(b", "er(b")
    after = _cols(")a", ")a")
    bad = union_nfa([
        pattern_nfa(COLUMNS, [(ee, "1"), (ext, "1"), (anything, "*")]),
        pattern_nfa(COLUMNS, [(anything, "*"), (ext, "1"), (ee, "1")]),
        pattern_nfa(COLUMNS, [(anything, "*"), (before, "1"), (after, "1"), (anything, "*")]),
    ])
    return complement(determinize(bad), name="r")


@dataclass(frozen=True)
class AcceptorBundle:
    m_int: CounterMachine
    m_tree: CounterMachine
    l_tt: CounterMachine
    r_dfa: Dfa
    f_machine: CounterMachine

    def accepts(self, c) -> bool:
        """Membership of a ConvWord, column sequence or ``TOP,BOTTOM``
        text in 𝓕."""
        return run(self.f_machine, as_columns(c)).accepted


def as_columns(c) -> tuple:
    if isinstance(c, ConvWord):
        return c.columns
    if isinstance(c, str):
        top, bottom = split_pair_text(c)
        return tuple(zip(top, bottom))
    return tuple(c)


@lru_cache(maxsize=None)
def build_acceptor() -> AcceptorBundle:
    l_tt = build_l_tt()
    r_dfa = build_r_dfa()
    f = product_counter_dfa(l_tt, r_dfa, name="f")
    return AcceptorBundle(build_m_int(), build_m_tree(), l_tt, r_dfa, f)


# ---------------------------------------------------------------------------
# quasigeodesity


@dataclass
class QuasigeodesicReport:
    radius: int
    rows: list          # (text form, word length, normal-form length)
    d_min: Fraction
    witness: str

    def holds(self, d) -> bool:
        return all(nl <= d * (wl + 1) for _, wl, nl in self.rows)


def quasigeodesic_report(max_radius: int) -> QuasigeodesicReport:
    """Word length vs normal-form length over the ball, with the least D
    such that |ν(g)| ≤ D(|g| + 1) on it."""
    if not 0 <= max_radius <= MAX_RADIUS:
        raise ValueError(f"radius must be between 0 and {MAX_RADIUS}")
    rows = []
    best, witness = Fraction(0), ""
    for key, (g, dist) in ball(max_radius).items():
        n = len(pair_columns(g))
        rows.append((key, dist, n))
        ratio = Fraction(n, dist + 1)
        if ratio > best:
            best, witness = ratio, key
    return QuasigeodesicReport(max_radius, rows, best, witness)


# ---------------------------------------------------------------------------
# non-context-free witness


def _ogden_groups(p: int) -> list:
    """The witness as a list of (column, repetitions) groups."""
    return [
        ((EXT, EXT), 1),
        ((OPEN, A), p),
        ((OPEN, OPEN), 1),
        ((A, OPEN), p),
        ((CLOSE, A), p),
        ((CLOSE, CLOSE), 1),
        ((A, CLOSE), p),
        ((ROOT, ROOT), 1),
    ]


def _expand(groups) -> tuple:
    return tuple(col for col, k in groups for _ in range(k))


def ogden_witness(p: int) -> ConvWord:
    """(e,e) ((,a)^p ((,() (a,()^p (),a)^p (),)) (a,))^p (r,r), of length
    4p + 4; checked to lie in 𝓕."""
    if p < 1:
        raise ValueError("p must be at least 1")
    w = ConvWord(2, _expand(_ogden_groups(p)))
    if not build_acceptor().accepts(w):
        raise AssertionError(f"witness for p={p} is not accepted")
    return w


def pumped_variants(p: int, count: int, seed: int = 0) -> list:
    """Distinct mutations of the witness that repeat one column of a
    bracketed group 0, 2 or 3 times, chosen with a seeded generator."""
    groups = _ogden_groups(p)
    base = _expand(groups)
    options = [(g, i) for g in range(1, len(groups) - 1) for i in (0, 2, 3)]
    rng = random.Random(seed)
    rng.shuffle(options)
    out, seen = [], set()
    for g, i in options:
        mutated = [list(x) for x in groups]
        # repeat one column of the group i times in place of once
        mutated[g][1] += i - 1
        word = _expand(mutated)
        if word != base and word not in seen:
            seen.add(word)
            out.append((f"group {g} x{i}", word))
        if len(out) == count:
            break
    return out
