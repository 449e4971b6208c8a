"""Cross-checks between the automata and the tree-pair oracle.

Every check returns a :class:`CheckResult`; a failing check carries the
smallest counterexample it found, ordered by caret count and then by the
text form of the pair.  All sampling goes through a seeded
``random.Random`` so reports are reproducible.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from math import comb

from .acceptor import PAIR_COLUMNS, build_acceptor
from .automata import (PAD, DeterminismError, apply_op, audit_determinism, count_accepted,
                       guard_holds, run)
from .multipliers import (build_multipliers, classify_x0, classify_x1, mult_input,
                          x0_case_dfas, x1_case_dfas)
from .treecalc import (IDENTITY, PLACEMENT_CHART, SIGMA_INT, TreePair, ball, caret_count,
                       decode_interior, decode_pair, decode_tree, encode_interior, encode_pair,
                       encode_tree, enumerate_pairs, enumerate_reduced_pairs, enumerate_trees,
                       evaluate, from_murray, generator, infix_order, inverse, is_reduced,
                       multiply, pair_columns, pair_text, placement, to_murray, x_n)

MAX_VERIFY_CARETS = 7
DEFAULT_SEED = 20240601


@dataclass
class CheckResult:
    name: str
    scope: dict
    passed: bool
    seconds: float
    checked: int = 0
    counterexample: object = None
    details: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        checks = sorted((asdict(c) for c in self.checks), key=lambda c: c["name"])
        return {"passed": self.passed, "checks": checks}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{status}  {c.name}  ({c.checked} checked, {c.seconds:.1f}s)"
            if not c.passed:
                line += f"  counterexample: {c.counterexample}"
            out.append(line)
        return out


class _Check:
    """Collects failures for one check and keeps the smallest one."""

    def __init__(self, name, **scope):
        self.name, self.scope = name, scope
        self.start = time.perf_counter()
        self.checked = 0
        self.worst = None
        self.details: dict = {}

    def record(self, ok: bool, key=None, example=None):
        self.checked += 1
        if not ok and (self.worst is None or key < self.worst[0]):
            self.worst = (key, example)

    def result(self) -> CheckResult:
        return CheckResult(self.name, self.scope, self.worst is None,
                           round(time.perf_counter() - self.start, 3), self.checked,
                           None if self.worst is None else self.worst[1], self.details)


def _key(g: TreePair, extra="") -> tuple:
    return (caret_count(g.domain), pair_text(g), extra)


def _cap(n, cap=MAX_VERIFY_CARETS):
    if n > cap:
        raise ValueError(f"caret bound {n} exceeds the cap of {cap}")


def _catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# acceptor


def verify_acceptor(max_carets: int = 7) -> VerificationReport:
    """Acceptance of ν-encoded pairs against ``is_reduced``, exhaustively,
    and accepted-word counts against the reduced-pair enumeration."""
    _cap(max_carets)
    f = build_acceptor()
    bic = _Check("acceptor/biconditional", max_carets=max_carets)
    for n in range(1, max_carets + 1):
        for p in enumerate_pairs(n):
            ok = f.accepts(pair_columns(p)) == is_reduced(p)
            bic.record(ok, _key(p), pair_text(p))
    cnt = _Check("acceptor/counts", max_carets=max_carets)
    for n in range(1, max_carets + 1):
        a, b = count_accepted(f.f_machine, n), len(enumerate_reduced_pairs(n))
        cnt.details[str(n)] = a
        cnt.record(a == b, (n,), f"n={n}: {a} accepted, {b} reduced pairs")
    tree = _Check("acceptor/tree_counts", max_carets=max_carets + 2)
    for n in range(0, max_carets + 3):
        want = _catalan(n) if n else 0
        got = count_accepted(f.m_tree, n)
        tree.record(got == want, (n,), f"n={n}: {got} tree words, Catalan {want}")
    return VerificationReport([bic.result(), cnt.result(), tree.result()])


# ---------------------------------------------------------------------------
# multipliers


def accepted_partners(m, u, extra: int = 2) -> list:
    """Every v for which the multiplier ``m`` accepts ⊗(u, v), with v at
    most ``extra`` columns longer than u.

    Depth-first search over configurations, pruned wherever the machine has
    no enabled transition.
    """
    u = tuple(u)
    out = []

    def step(state, counters, letter):
        enabled = [t for t in m.moves(state, letter) if guard_holds(t.guard, counters)]
        if len(enabled) > 1:
            raise DeterminismError(f"{len(enabled)} transitions enabled in {state!r}")
        if not enabled:
            return None
        return enabled[0].target, apply_op(enabled[0].op, counters)

    def dfs(state, counters, pos, v, v_done):
        if pos >= len(u):
            if v and m.accepting(state) and not any(counters):
                out.append(tuple(v))
            if v_done or pos >= len(u) + extra:
                return
        ucol = u[pos] if pos < len(u) else PAD
        options = [] if v_done else list(PAIR_COLUMNS)
        if pos < len(u) and v:
            options.append(PAD)
        for vcol in options:
            nxt = step(state, counters, (ucol, vcol))
            if nxt is None:
                continue
            if vcol == PAD:
                dfs(nxt[0], nxt[1], pos + 1, v, True)
            else:
                v.append(vcol)
                dfs(nxt[0], nxt[1], pos + 1, v, False)
                v.pop()

    dfs(m.start, (0,) * m.counters, 0, [], False)
    return out


def _classify(s: str, g: TreePair, h: TreePair) -> str:
    if s == "x0":
        return "x0:" + classify_x0(g)
    if s == "x1":
        return "x1:" + classify_x1(g)
    # g·s⁻¹ = h means h·s = g: classify h for s
    base = s[:2]
    return f"{base}:" + (classify_x0(h) if base == "x0" else classify_x1(h))


NEAR_MISS_KINDS = ("same", "other", "mutate", "mutate", "mutate", "length", "swap")


def _near_miss(g: TreePair, s: str, rng: random.Random):
    """A wrong partner for g, or for g·s when the tracks are swapped.

    Returns ``(kind, element encoded by u, v)``: the element itself, a
    product by another generator, a one-column mutation or length change
    of the right answer, or the swapped convolution.
    """
    gs = multiply(g, generator(s))
    right = pair_columns(gs)
    kind = rng.choice(NEAR_MISS_KINDS)
    if kind == "same":
        return kind, g, pair_columns(g)
    if kind == "other":
        t = rng.choice([x for x in ("x0", "x1", "x0inv", "x1inv") if x != s])
        return kind, g, pair_columns(multiply(g, generator(t)))
    if kind == "swap":
        return kind, gs, pair_columns(g)
    if kind == "length":
        if len(right) > 1 and rng.random() < 0.5:
            return kind, g, right[:-1]
        return kind, g, right + (rng.choice(PAIR_COLUMNS),)
    v = list(right)
    i = rng.randrange(len(v))
    v[i] = rng.choice([c for c in PAIR_COLUMNS if c != v[i]])
    return kind, g, tuple(v)


def verify_multiplier(s: str, max_carets: int = 7, wrong_samples: int = 1000,
                      seed: int = DEFAULT_SEED, unique_carets: int = 0) -> VerificationReport:
    """L_s against the oracle product: every reduced g with at most
    ``max_carets`` carets, seeded near-miss negatives, and optionally the
    set of all accepted partners of each u up to ``unique_carets``."""
    _cap(max_carets)
    bundle = build_multipliers()
    m = bundle.machine(s)
    gen = generator(s)
    rng = random.Random(f"{seed}:{s}")
    pos = _Check(f"multiplier/{s}/positive", max_carets=max_carets)
    hist: Counter = Counter()
    elements = [g for n in range(1, max_carets + 1) for g in enumerate_reduced_pairs(n)]
    for g in elements:
        h = multiply(g, gen)
        hist[_classify(s, g, h)] += 1
        ok = run(m, mult_input(pair_columns(g), pair_columns(h))).accepted
        pos.record(ok, _key(g), f"{pair_text(g)} -> {pair_text(h)}")
    pos.details["cases"] = dict(sorted(hist.items()))

    neg = _Check(f"multiplier/{s}/near_miss", samples=wrong_samples, seed=seed)
    kinds: Counter = Counter()
    while neg.checked < wrong_samples:
        kind, gu, v = _near_miss(rng.choice(elements), s, rng)
        u = pair_columns(gu)
        if v == pair_columns(multiply(gu, gen)):
            continue
        kinds[kind] += 1
        ok = not run(m, mult_input(u, v)).accepted
        neg.record(ok, (len(u), str(u), str(v)), f"{_text(u)} vs {_text(v)} ({kind})")
    neg.details["kinds"] = dict(sorted(kinds.items()))
    checks = [pos.result(), neg.result()]

    if unique_carets:
        _cap(unique_carets)
        uniq = _Check(f"multiplier/{s}/unique_partner", max_carets=unique_carets)
        for n in range(1, unique_carets + 1):
            for g in enumerate_reduced_pairs(n):
                got = accepted_partners(m, pair_columns(g))
                want = [pair_columns(multiply(g, gen))]
                uniq.record(got == want, _key(g),
                            f"{pair_text(g)}: accepted {[_text(v) for v in got]}")
        checks.append(uniq.result())
    return VerificationReport(checks)


def verify_x1_branches(max_carets: int = 5) -> VerificationReport:
    """The merged 3-counter machine accepts exactly what the three branch
    machines 𝓝, 𝓛₁ and 𝓛₂ accept together, partner by partner."""
    _cap(max_carets)
    b = build_multipliers()
    chk = _Check("multiplier/x1/branches", max_carets=max_carets)
    for n in range(1, max_carets + 1):
        for g in enumerate_reduced_pairs(n):
            u = pair_columns(g)
            merged = set(accepted_partners(b.l_x1, u))
            parts = set()
            for m in (b.n, b.l1, b.l2):
                parts |= set(accepted_partners(m, u))
            chk.record(merged == parts, _key(g), pair_text(g))
    return VerificationReport([chk.result()])


def verify_case_partition(max_carets: int = 7) -> VerificationReport:
    """Each g lies in exactly one x0 case and one x1 case, and the case
    template matching ⊗(ν(g), ν(g·s)) is exactly the one its trees name."""
    _cap(max_carets)
    case5b = build_multipliers().case5b
    x0c, x1c = x0_case_dfas(), x1_case_dfas()
    out = []
    for s, cases, classify in (("x0", x0c, classify_x0), ("x1", x1c, classify_x1)):
        chk = _Check(f"cases/{s}", max_carets=max_carets)
        hist: Counter = Counter()
        gen = generator(s)
        for n in range(1, max_carets + 1):
            for g in enumerate_reduced_pairs(n):
                label = classify(g)
                hist[label] += 1
                w = mult_input(pair_columns(g), pair_columns(multiply(g, gen)))
                hits = [k for k, d in cases.items()
                        if d.accepts(w) and (k != "5b" or run(case5b, w).accepted)]
                chk.record(hits == [label], _key(g), f"{pair_text(g)}: {label} vs {hits}")
        chk.details["cases"] = dict(sorted(hist.items()))
        out.append(chk.result())
    return VerificationReport(out)


def verify_determinism(names=None, limit: int = 50000) -> VerificationReport:
    """Static determinism audit over the zero/positive predicate lattice."""
    acc, mult = build_acceptor(), build_multipliers()
    machines = {
        "m_int": acc.m_int, "m_tree": acc.m_tree, "l_tt": acc.l_tt, "f": acc.f_machine,
        "case5b": mult.case5b, "l_x0": mult.l_x0, "l_x0inv": mult.l_x0inv,
        "l2": mult.l2, "l_x1": mult.l_x1, "l_x1inv": mult.l_x1inv,
    }
    out = []
    for name in names or machines:
        chk = _Check(f"determinism/{name}", counters=machines[name].counters)
        bad = audit_determinism(machines[name], limit)
        chk.checked = 1
        if bad:
            chk.worst = ((), repr(bad[0])[:500])
        out.append(chk.result())
    return VerificationReport(out)


def _text(cols) -> str:
    top = "".join(c[0] for c in cols)
    bottom = "".join(c[1] for c in cols)
    return f"{top},{bottom}"


# ---------------------------------------------------------------------------
# group laws


def commutator(a: TreePair, b: TreePair) -> TreePair:
    """[a, b] = a⁻¹ b⁻¹ a b."""
    return multiply(multiply(multiply(inverse(a), inverse(b)), a), b)


FIN_RELATORS = (
    ("x0^-1 x1", "x0^-1 x1 x0"),
    ("x0^-1 x1", "x0^-1 x0^-1 x1 x0 x0"),
)
# the usual form of the finite presentation
STANDARD_RELATORS = (
    ("x0 x1^-1", "x0^-1 x1 x0"),
    ("x0 x1^-1", "x0^-1 x0^-1 x1 x0 x0"),
)


def relators(words=FIN_RELATORS) -> dict:
    """Commutators ``[a, b]`` of generator words, evaluated in the oracle."""
    return {f"[{a}, {b}]": commutator(evaluate(a), evaluate(b)) for a, b in words}


def verify_group_laws(radius: int = 5, samples: int = 200,
                      seed: int = DEFAULT_SEED) -> VerificationReport:
    rng = random.Random(f"{seed}:laws")
    rel = _Check("group/relators")
    for name, value in relators().items():
        rel.record(value == IDENTITY, (name,), f"{name} = {pair_text(value)}")
    std = _Check("group/standard_relators")
    for name, value in relators(STANDARD_RELATORS).items():
        std.record(value == IDENTITY, (name,), f"{name} = {pair_text(value)}")
    elements = [g for g, _ in ball(radius).values()]
    laws = _Check("group/identity_inverse", radius=radius)
    for g in elements:
        ok = (multiply(g, IDENTITY) == g and multiply(IDENTITY, g) == g
              and multiply(g, inverse(g)) == IDENTITY and multiply(inverse(g), g) == IDENTITY)
        laws.record(ok, _key(g), pair_text(g))
    assoc = _Check("group/associativity", radius=radius, samples=samples, seed=seed)
    for _ in range(samples):
        a, b, c = (rng.choice(elements) for _ in range(3))
        ok = multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        assoc.record(ok, (_key(a), _key(b), _key(c)),
                     " ".join(pair_text(x) for x in (a, b, c)))
    inf = _Check("group/x2x1=x1x3")
    inf.record(multiply(x_n(2), x_n(1)) == multiply(x_n(1), x_n(3)), (), "x2 x1 != x1 x3")
    return VerificationReport([rel.result(), std.result(), laws.result(), assoc.result(),
                               inf.result()])


# ---------------------------------------------------------------------------
# roundtrips


def interior_words(max_len: int):
    """All interior words of length ≤ max_len (filtered through M_int)."""
    m_int = build_acceptor().m_int
    for n in range(max_len + 1):
        for w in itertools.product(SIGMA_INT, repeat=n):
            w = "".join(w)
            if run(m_int, w).accepted:
                yield w


def verify_roundtrips(max_carets: int = 10, interior_len: int = 8,
                      pair_carets: int = 5) -> VerificationReport:
    trees = _Check("roundtrip/trees", max_carets=max_carets)
    for n in range(1, max_carets + 1):
        for t in enumerate_trees(n):
            trees.record(decode_tree(encode_tree(t)) == t, (n, encode_tree(t)), encode_tree(t))
    interior = _Check("roundtrip/interior", max_len=interior_len)
    murray = _Check("roundtrip/murray", max_len=interior_len)
    chart = _Check("roundtrip/placement_chart", max_len=interior_len)
    seen = set()
    for w in interior_words(interior_len):
        t = decode_interior(w)
        interior.record(encode_interior(t) == w, (len(w), w), w)
        murray.record(from_murray(to_murray(w)) == w, (len(w), w), w)
        paths = infix_order(t)
        for i in range(len(w) - 1):
            pair = (w[i], w[i + 1])
            seen.add(pair)
            ok = placement(paths[i], paths[i + 1]) == PLACEMENT_CHART[pair]
            chart.record(ok, (len(w), w, i), f"{w} at {i}")
    chart.details["pairs_realised"] = len(seen)
    chart.record(len(seen) == 16, (0,), f"only {len(seen)} of 16 letter pairs occur")
    pairs = _Check("roundtrip/pairs", max_carets=pair_carets)
    for n in range(1, pair_carets + 1):
        for p in enumerate_reduced_pairs(n):
            pairs.record(decode_pair(encode_pair(p)) == p, _key(p), pair_text(p))
    return VerificationReport([trees.result(), interior.result(), murray.result(),
                               chart.result(), pairs.result()])


# ---------------------------------------------------------------------------
# everything


def verify_all(max_carets: int = 6, radius: int = 5, seed: int = DEFAULT_SEED,
               wrong_samples: int = 1000, audit: bool = True) -> VerificationReport:
    report = VerificationReport()
    report.extend(verify_roundtrips())
    report.extend(verify_group_laws(radius, seed=seed))
    report.extend(verify_acceptor(max_carets))
    for s in ("x0", "x1", "x0inv", "x1inv"):
        report.extend(verify_multiplier(s, max_carets, wrong_samples, seed))
    report.extend(verify_case_partition(max_carets))
    if audit:
        report.extend(verify_determinism())
    return report
