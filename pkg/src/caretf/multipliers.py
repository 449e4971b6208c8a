"""Multiplier automata for the generators x0, x1 and their inverses.

A multiplier reads ⊗(u, v) where u and v are acceptor words, so a letter
is a pair ``(ucol, vcol)`` of Σ_T² columns, either of which may be the pad
letter (u and v differ in length by at most one).  ``L_s`` accepts
⊗(ν(g), ν(g·s)) and nothing else.

Each generator's product is described by a handful of case templates: a
long common prefix and suffix with a local rewrite.  The templates are
regular, apart from the check in one x1 case that a block of the
interior word closes at the right point, which needs one counter.
Membership of u in 𝓕 adds the acceptor's two counters.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .acceptor import INTERIOR_RULES, PAIR_COLUMNS, build_acceptor
from .automata import (ANY, NOP, INC, POS, ZERO, PAD, Alphabet, CounterMachine, Dfa,
                       ExplicitCounterMachine, ProductMachine, ResetSinkMachine,
                       RestrictedMachine, SINK, SwappedMachine, concat, conv_product, determinize,
                       intersect, pattern_nfa, product_counter_dfa, shifted_copy_dfa, union,
                       union_nfa, universal_machine)
from .treecalc import (A, B, CLOSE, EXT, OPEN, ROOT, SIGMA_INT, SIGMA_T, TreePair,
                       encode_tree, infix_order, subtree_at)

LAMBDA = Alphabet(PAIR_COLUMNS)
LETTERS = LAMBDA.columns(2)
EXTERIOR = (EXT, ROOT)


def _letters(pred) -> frozenset:
    return frozenset(x for x in LETTERS if pred(*x))


EVERY = frozenset(LETTERS)
EQ = _letters(lambda u, v: u == v)
EQ_INT = _letters(lambda u, v: u == v and u[0] in SIGMA_INT)


def _swap(top_u, top_v, bottoms=SIGMA_T) -> frozenset:
    """Letters ((top_u, z), (top_v, z)) for z in ``bottoms``."""
    return frozenset(((top_u, z), (top_v, z)) for z in bottoms)


def _template(*segments) -> object:
    return pattern_nfa(LETTERS, segments)


def _dfa(templates, name) -> Dfa:
    return determinize(union_nfa(list(templates)), name=name)


def _single(letter) -> Dfa:
    return determinize(_template(({letter}, "1")))


def _union_all(dfas, name) -> Dfa:
    out = dfas[0]
    for d in dfas[1:]:
        out = union(out, d)
    out.name = name
    return out


def _shift_after(prefix: Dfa, letter, inserted) -> Dfa:
    """prefix · letter · {⊗(w, inserted·w)}."""
    tail = concat(_single(letter), shifted_copy_dfa([inserted], LAMBDA))
    return tail if prefix is None else concat(prefix, tail)


# ---------------------------------------------------------------------------
# x0


def x0_case_dfas() -> dict:
    """Template DFA per x0 case.

    1  u = (r,z)γ,                  v = (r,e)(e,z)γ
    2  u = γ(e,z)(r,e), z ∈ {e,r},   v = γ(r,z)
    3  u = γ(e,z)β(r,y)δ,           v = γ(r,z)β(e,y)δ, β interior,
       without the case-2 shape β = δ = ε, y = e, z ∈ {e,r}
    """
    case1 = _union_all([_shift_after(None, ((ROOT, z), (ROOT, EXT)), (EXT, z)) for z in SIGMA_T],
                       "x0 case 1")
    case2 = _dfa([_template((EQ, "*"), (_swap(EXT, ROOT, EXTERIOR), "1"),
                            ({((ROOT, EXT), PAD)}, "1"))], "x0 case 2")
    down = _swap(EXT, ROOT)
    up = _swap(ROOT, EXT)
    case3 = _dfa([
        _template((EQ, "*"), (down, "1"), (EQ_INT, "+"), (up, "1"), (EQ, "*")),
        _template((EQ, "*"), (down, "1"), (up, "1"), (EQ, "+")),
        _template((EQ, "*"), (_swap(EXT, ROOT, SIGMA_INT), "1"), (up, "1")),
        _template((EQ, "*"), (_swap(EXT, ROOT, EXTERIOR), "1"), (_swap(ROOT, EXT, "r()ab"), "1")),
    ], "x0 case 3")
    return {"1": case1, "2": case2, "3": case3}


def build_n0() -> Dfa:
    c = x0_case_dfas()
    return _union_all([c["1"], c["2"], c["3"]], "n0")


# ---------------------------------------------------------------------------
# x1

# Case 2 rewrites the bottom letter under the root and inserts a column:
# z -> (z', inserted bottom letter)
CASE2_REWRITE = {A: (OPEN, CLOSE), CLOSE: (B, CLOSE)}


def _case2_label(z) -> str:
    return {A: "2b", CLOSE: "2c"}.get(z, "2a")


def _r_then_e() -> Dfa:
    """The u column after the one with top letter r has top letter e."""
    at_root = _letters(lambda u, v: u != PAD and u[0] == ROOT)
    then_e = _letters(lambda u, v: u != PAD and u[0] == EXT)
    return _dfa([_template((EVERY, "*"), (at_root, "1"), (then_e, "1"), (EVERY, "*"))],
                "r then e")


def x1_case_dfas() -> dict:
    """Template DFA per x1 case 1-4 and the regular parts of case 5.

    1   u = γ(r,z),            v = γ(r,z)(e,a)(e,e)
    2   u = γ(r,z)δ,            v = γ(r,z')(e,y)δ, the top of δ starting
        with e; (z', y) = ((,)) for z = a, (b,)) for z = ), else (z, a)
    3   u = γ(r,z)(a,e)(e,e),  v = γ(r,z), z ∈ {e,r}
    4   u = γ(r,z)β(a,y)(e,e), v = γ(r,z)β(e,y), β interior, y ∈ {e,r},
        and z ∉ {e,r} when β = ε and y = e
    5a  u = γ(r,z)β(a,y)(e,x)δ,  v = γ(r,z)β(e,y)(e,x)δ, excluding the
        case 3/4 shapes δ = ε, x = e, y ∈ {e,r}
    5b  u = γ(r,z)β((,y)β'f̄β''(e,x)δ, v = γ(r,z)β(e,y)β'fβ''(e,x)δ with
        (f̄, f) ∈ {(b,(), (),a)}; where f̄ sits is checked by a counter
    """
    root = _swap(ROOT, ROOT)
    prefix = determinize(_template((EQ, "*")))
    case1 = _dfa([_template((EQ, "*"), (root, "1"), ({(PAD, (EXT, A))}, "1"),
                            ({(PAD, (EXT, EXT))}, "1"))], "x1 case 1")
    guard = _r_then_e()
    case2 = {}
    for z in SIGMA_T:
        z2, y = CASE2_REWRITE.get(z, (z, A))
        d = intersect(_shift_after(prefix, ((ROOT, z), (ROOT, z2)), (EXT, y)), guard)
        case2.setdefault(_case2_label(z), []).append(d)
    case3 = _dfa([_template((EQ, "*"), (_swap(ROOT, ROOT, EXTERIOR), "1"),
                            ({((A, EXT), PAD)}, "1"), ({((EXT, EXT), PAD)}, "1"))], "x1 case 3")
    last = {((EXT, EXT), PAD)}
    case4 = _dfa([
        _template((EQ, "*"), (root, "1"), (EQ_INT, "+"), (_swap(A, EXT, EXTERIOR), "1"),
                  (last, "1")),
        _template((EQ, "*"), (root, "1"), (_swap(A, EXT, ROOT), "1"), (last, "1")),
        _template((EQ, "*"), (_swap(ROOT, ROOT, SIGMA_INT), "1"), (_swap(A, EXT, EXT), "1"),
                  (last, "1")),
    ], "x1 case 4")
    lift = _swap(A, EXT)
    keep = _swap(EXT, EXT)
    case5a = _dfa([
        _template((EQ, "*"), (root, "1"), (EQ_INT, "*"), (lift, "1"), (keep, "1"), (EQ, "+")),
        _template((EQ, "*"), (root, "1"), (EQ_INT, "*"), (lift, "1"),
                  (_swap(EXT, EXT, "r()ab"), "1")),
        _template((EQ, "*"), (root, "1"), (EQ_INT, "*"), (_swap(A, EXT, SIGMA_INT), "1"),
                  (_swap(EXT, EXT, EXT), "1")),
    ], "x1 case 5a")
    flip = _swap(B, OPEN) | _swap(CLOSE, A)
    case5b = _dfa([_template((EQ, "*"), (root, "1"), (EQ_INT, "*"), (_swap(OPEN, EXT), "1"),
                             (EQ_INT, "*"), (flip, "1"), (EQ_INT, "*"), (keep, "1"),
                             (EQ, "*"))], "x1 case 5b shape")
    out = {"1": case1}
    for label in ("2a", "2b", "2c"):
        out[label] = _union_all(case2[label], f"x1 case {label}")
    out.update({"3": case3, "4": case4, "5a": case5a, "5b": case5b})
    return out


def build_n1() -> Dfa:
    c = x1_case_dfas()
    return _union_all([c[k] for k in ("1", "2a", "2b", "2c", "3", "4")], "n1")


def build_k1() -> Dfa:
    return x1_case_dfas()["5a"]


def build_k1_l1() -> tuple:
    """The case-5a DFA and its 2-counter machine 𝓛₁."""
    k1 = build_k1()
    return k1, build_l1(k1)


def build_k2() -> Dfa:
    return x1_case_dfas()["5b"]


def _top(col):
    return None if col == PAD else col[0]


def build_case5b_machine() -> ExplicitCounterMachine:
    """Six states q0..q5 and one counter, reading the top letters of v
    (and of u at the rewritten column).

    q0 waits for the root; q1 skips the interior block after it; after the
    next exterior letter q2 runs the interior counter rules.  The rewritten
    column must come at counter zero: ``(b,()`` increments into q3, whose
    block must close before the next exterior letter, and ``(),a)`` moves
    to q5, which needs an exterior letter next.  q4 accepts anything.
    """
    states = [f"q{i}" for i in range(6)]
    table: dict = {}

    def add(q, x, guard, target, op):
        table.setdefault((q, x), []).append(((guard,), target, (op,)))

    for x in LETTERS:
        ut, vt = _top(x[0]), _top(x[1])
        add("q0", x, ANY, "q1" if vt == ROOT else "q0", NOP)
        add("q4", x, ANY, "q4", NOP)
        if vt in SIGMA_INT:
            add("q1", x, ANY, "q1", NOP)
        elif vt == EXT:
            add("q1", x, ANY, "q2", NOP)
            add("q3", x, ZERO, "q4", NOP)
            add("q5", x, ANY, "q4", NOP)
        if vt in SIGMA_INT:
            g, o = INTERIOR_RULES[vt]
            if (ut, vt) == (B, OPEN):
                add("q2", x, ZERO, "q3", INC)
                add("q2", x, POS, "q2", INC)
            elif (ut, vt) == (CLOSE, A):
                add("q2", x, ZERO, "q5", NOP)
                add("q2", x, POS, "q2", NOP)
            else:
                add("q2", x, g, "q2", o)
            add("q3", x, POS, "q3", o)
    return ExplicitCounterMachine(1, LETTERS, states, "q0", {"q4"}, table, name="case5b")


# ---------------------------------------------------------------------------
# assembled machines


def f_on_pairs() -> CounterMachine:
    """The acceptor over pad-free columns (the letters of u and v)."""
    return RestrictedMachine(build_acceptor().f_machine, PAIR_COLUMNS, name="f")


def u_in_f() -> CounterMachine:
    """⊗(𝓕, Λ*): 2 counters."""
    return conv_product(f_on_pairs(), universal_machine(PAIR_COLUMNS), name="u in f")


def v_in_f() -> CounterMachine:
    """⊗(Λ*, 𝓕): 2 counters."""
    return conv_product(universal_machine(PAIR_COLUMNS), f_on_pairs(), name="v in f")


def build_l_x0(n0: Dfa | None = None) -> CounterMachine:
    return product_counter_dfa(u_in_f(), n0 or build_n0(), name="l_x0")


def build_l1(k1: Dfa | None = None) -> CounterMachine:
    return product_counter_dfa(u_in_f(), k1 or build_k1(), name="l1")


def build_l2(k2: Dfa | None = None, case5b=None) -> CounterMachine:
    """(case5b ∩ 𝓚₂) ∩ ⊗(Λ*, 𝓕): 1 + 2 = 3 counters."""
    parts = [case5b or build_case5b_machine(), k2 or build_k2(), v_in_f()]
    return ProductMachine(parts, name="l2")


def build_l_x1(n1: Dfa | None = None, k1: Dfa | None = None, k2: Dfa | None = None,
               case5b=None) -> CounterMachine:
    """One deterministic 3-counter machine for 𝓝 ∪ 𝓛₁ ∪ 𝓛₂.

    The three template DFAs run side by side (made total so none blocks
    the others) together with ⊗(𝓕, Λ*) and the case-5b counter machine,
    which drops into a sink with its counter cleared once it fails.
    """
    n1, k1, k2 = n1 or build_n1(), k1 or build_k1(), k2 or build_k2()
    fig6 = ResetSinkMachine(case5b or build_case5b_machine())
    parts = [u_in_f(), n1.completed(), k1.completed(), k2.completed(), fig6]

    def accept(state):
        su, sn, sk1, sk2, s6 = state
        if not parts[0].accepting(su):
            return False
        return (parts[1].accepting(sn) or parts[2].accepting(sk1)
                or (parts[3].accepting(sk2) and fig6.accepting(s6)))

    def alive(state):
        _, sn, sk1, sk2, s6 = state
        return sn != SINK or sk1 != SINK or (sk2 != SINK and s6 != SINK)

    return ProductMachine(parts, accept=accept, name="l_x1", alive=alive)


def build_inverse_multiplier(m: CounterMachine) -> CounterMachine:
    """L_{s⁻¹} = {⊗(u, v) : ⊗(v, u) ∈ L_s}, by exchanging u and v."""
    return SwappedMachine(m, name=(m.name + "inv") if m.name else "")


@dataclass(frozen=True)
class MultiplierBundle:
    n0: Dfa
    l_x0: CounterMachine
    n1: Dfa
    k1: Dfa
    k2: Dfa
    case5b: CounterMachine
    n: CounterMachine
    l1: CounterMachine
    l2: CounterMachine
    l_x1: CounterMachine
    l_x0inv: CounterMachine
    l_x1inv: CounterMachine

    def machine(self, s: str) -> CounterMachine:
        key = s.replace("^-1", "inv")
        try:
            return {"x0": self.l_x0, "x1": self.l_x1,
                    "x0inv": self.l_x0inv, "x1inv": self.l_x1inv}[key]
        except KeyError:
            raise ValueError(f"unknown generator {s!r}") from None


@lru_cache(maxsize=None)
def build_multipliers() -> MultiplierBundle:
    n0, n1, k1, k2 = build_n0(), build_n1(), build_k1(), build_k2()
    fig6 = build_case5b_machine()
    l_x0 = build_l_x0(n0)
    l_x1 = build_l_x1(n1, k1, k2, fig6)
    return MultiplierBundle(
        n0=n0, l_x0=l_x0, n1=n1, k1=k1, k2=k2, case5b=fig6,
        n=product_counter_dfa(u_in_f(), n1, name="n"),
        l1=build_l1(k1), l2=build_l2(k2, fig6), l_x1=l_x1,
        l_x0inv=build_inverse_multiplier(l_x0), l_x1inv=build_inverse_multiplier(l_x1))


def mult_input(u, v) -> tuple:
    """Letters of ⊗(u, v) for two acceptor column sequences."""
    u, v = tuple(u), tuple(v)
    n = max(len(u), len(v))
    return tuple((u[i] if i < len(u) else PAD, v[i] if i < len(v) else PAD) for i in range(n))


# ---------------------------------------------------------------------------
# structural case classification


def _has(t, path) -> bool:
    return subtree_at(t, path) is not None


def classify_x0(g: TreePair) -> str:
    """Which x0 case g falls in, read off its trees."""
    t, s = g
    if t[0] is None:
        return "1"
    last = subtree_at(s, infix_order(s)[-1])
    if t[1] is None and t[0][1] is None and last == (None, None):
        return "2"
    return "3"


def classify_x1(g: TreePair) -> str:
    """Which x1 case g falls in: 1, 2a-2c, 3, 4, 5a or 5b."""
    t, s = g
    if t[1] is None:
        return "1"
    q = t[1]
    if q[0] is None:
        root_at = infix_order(t).index("")
        return _case2_label(encode_tree(s)[root_at])
    p = q[0]
    order = infix_order(s)
    if q[1] is None and p[1] is None:
        if p[0] is None and all(subtree_at(s, c)[0] is None for c in order[-2:]):
            return "3"
        if subtree_at(s, order[-1])[0] is None:
            return "4"
    return "5a" if p[1] is None else "5b"
