"""Finite automata and nonblind deterministic counter automata.

Letters are arbitrary hashable values: single characters for plain words,
tuples for convolution columns.  Machines are immutable once built; the
composite machines (products, convolutions, track swaps) are evaluated
lazily and memoise their transition tables, since the multiplier alphabets
have well over a thousand letters.

A counter machine exposes ``moves(state, letter)``, a tuple of
``Transition(guard, target, op)``.  A guard has one predicate per counter
(``ANY``, ``ZERO`` or ``POS``) and an op has one action per counter
(``NOP``, ``INC``, ``DEC`` or ``RESET``).  A missing transition is an
implicit reject.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

PAD = "⋄"

ANY, ZERO, POS = "any", "=0", ">0"
NOP, INC, DEC, RESET = "nop", "+1", "-1", ":=0"

GUARDS = (ANY, ZERO, POS)
OPS = (NOP, INC, DEC, RESET)


class AutomatonError(Exception):
    pass


class AlphabetError(AutomatonError, ValueError):
    """A letter outside the machine's input alphabet was read."""


class DeterminismError(AutomatonError):
    """Two transitions were enabled for one configuration."""


# ---------------------------------------------------------------------------
# alphabets and convolutions


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple
    pad: Hashable = PAD

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        if self.pad in self.symbols:
            raise ValueError(f"pad {self.pad!r} may not be an alphabet symbol")

    def __contains__(self, letter):
        return letter in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def padded(self) -> tuple:
        return self.symbols + (self.pad,)

    def columns(self, k: int) -> tuple:
        """All k-track convolution columns: k-tuples over the padded
        alphabet, excluding the all-pad column."""
        allpad = (self.pad,) * k
        return tuple(c for c in itertools.product(self.padded(), repeat=k) if c != allpad)


@dataclass(frozen=True)
class ConvWord:
    tracks: int
    columns: tuple
    pad: Hashable = PAD

    def __post_init__(self):
        if self.tracks < 1:
            raise ValueError("a convolution has at least one track")
        ended = [False] * self.tracks
        for i, col in enumerate(self.columns):
            if len(col) != self.tracks:
                raise ValueError(f"column {i} has {len(col)} entries, expected {self.tracks}")
            if all(x == self.pad for x in col):
                raise ValueError(f"column {i} is all padding")
            for j, x in enumerate(col):
                if x == self.pad:
                    ended[j] = True
                elif ended[j]:
                    raise ValueError(f"track {j} resumes after padding at column {i}")

    def __len__(self):
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    def __getitem__(self, i):
        return self.columns[i]


def convolve(words: Sequence[Sequence], pad=PAD, alphabet: Alphabet | None = None) -> ConvWord:
    """Align ``words`` column by column, padding the shorter ones.

    >>> convolve(["aa", "bbb", "a"]).columns
    (('a', 'b', 'a'), ('a', 'b', '⋄'), ('⋄', 'b', '⋄'))
    """
    if not words:
        raise ValueError("need at least one word")
    for w in words:
        for x in w:
            if x == pad:
                raise ValueError(f"the pad letter {pad!r} is reserved")
            if alphabet is not None and x not in alphabet:
                raise AlphabetError(f"letter {x!r} is not in the alphabet")
    n = max(len(w) for w in words)
    cols = tuple(tuple(w[i] if i < len(w) else pad for w in words) for i in range(n))
    return ConvWord(len(words), cols, pad)


def deconvolve(cw: ConvWord) -> list[tuple]:
    """Inverse of :func:`convolve`: the padded-off tracks as tuples."""
    return [tuple(col[j] for col in cw.columns if col[j] != cw.pad) for j in range(cw.tracks)]


# ---------------------------------------------------------------------------
# counter machines


class Transition(NamedTuple):
    guard: tuple
    target: Hashable
    op: tuple


def guard_holds(guard: tuple, counters: Sequence[int]) -> bool:
    for g, c in zip(guard, counters):
        if g == ZERO and c != 0:
            return False
        if g == POS and c <= 0:
            return False
    return True


def apply_op(op: tuple, counters: Sequence[int]) -> tuple:
    out = []
    for o, c in zip(op, counters):
        if o == INC:
            c += 1
        elif o == DEC:
            c -= 1
        elif o == RESET:
            c = 0
        out.append(c)
    return tuple(out)


def guards_overlap(g1: tuple, g2: tuple) -> bool:
    """Whether some counter valuation satisfies both guards."""
    return not any({a, b} == {ZERO, POS} for a, b in zip(g1, g2))


class CounterMachine:
    """Base class: subclasses provide ``_moves`` and ``accepting``."""

    counters: int
    alphabet: frozenset
    start: Hashable
    name: str = ""

    def __init__(self):
        self._cache: dict = {}

    def moves(self, state, letter) -> tuple:
        key = (state, letter)
        try:
            return self._cache[key]
        except KeyError:
            pass
        result = tuple(self._moves(state, letter))
        self._cache[key] = result
        return result

    def _moves(self, state, letter) -> Iterable[Transition]:
        raise NotImplementedError

    def accepting(self, state) -> bool:
        raise NotImplementedError

    def accepts(self, word) -> bool:
        return run(self, word).accepted

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<{type(self).__name__}{label}: {self.counters} counters, {len(self.alphabet)} letters>"


class ExplicitCounterMachine(CounterMachine):
    """A counter machine given by an explicit transition table.

    ``table`` maps ``(state, letter)`` to a list of ``(guard, target, op)``.
    Every decrement must sit under a ``POS`` guard on the same counter.
    """

    def __init__(self, counters, alphabet, states, start, accepting, table, name=""):
        super().__init__()
        self.counters = counters
        self.alphabet = frozenset(alphabet)
        self.states = frozenset(states)
        self.start = start
        self.final = frozenset(accepting)
        self.name = name
        self.table = {}
        if start not in self.states or not self.final <= self.states:
            raise AutomatonError("start and accepting states must be states")
        for (state, letter), moves in table.items():
            if state not in self.states:
                raise AutomatonError(f"unknown state {state!r}")
            if letter not in self.alphabet:
                raise AlphabetError(f"transition on {letter!r} outside the alphabet")
            checked = []
            for guard, target, op in moves:
                guard, op = tuple(guard), tuple(op)
                if len(guard) != counters or len(op) != counters:
                    raise AutomatonError(f"guard/op arity mismatch on {(state, letter)!r}")
                if target not in self.states:
                    raise AutomatonError(f"unknown target {target!r}")
                for g, o in zip(guard, op):
                    if g not in GUARDS or o not in OPS:
                        raise AutomatonError(f"bad guard or op {g!r}/{o!r}")
                    if o == DEC and g != POS:
                        raise AutomatonError(
                            f"decrement on {(state, letter)!r} is not guarded by a positivity test")
                checked.append(Transition(guard, target, op))
            self.table[(state, letter)] = tuple(checked)

    def _moves(self, state, letter):
        return self.table.get((state, letter), ())

    def accepting(self, state):
        return state in self.final


class DfaMachine(CounterMachine):
    """A DFA viewed as a 0-counter machine."""

    def __init__(self, dfa: "Dfa"):
        super().__init__()
        self.dfa = dfa
        self.counters = 0
        self.alphabet = dfa.alphabet
        self.start = dfa.start
        self.name = dfa.name

    def _moves(self, state, letter):
        q = self.dfa.step(state, letter)
        return () if q is None else (Transition((), q, ()),)

    def accepting(self, state):
        return self.dfa.accepting(state)


def as_machine(m) -> CounterMachine:
    return DfaMachine(m) if isinstance(m, Dfa) else m


class ProductMachine(CounterMachine):
    """Synchronous product of machines over one alphabet.

    Counters are concatenated in component order.  ``accept`` receives the
    tuple of component states; by default every component must accept.
    Transitions into states rejected by ``alive`` are dropped, which lets a
    union of branches fail as soon as every branch is dead.
    """

    def __init__(self, parts, accept: Callable | None = None, name="",
                 alive: Callable | None = None):
        super().__init__()
        self.parts = tuple(as_machine(p) for p in parts)
        self._alive = alive
        alphabets = {p.alphabet for p in self.parts}
        if len(alphabets) != 1:
            raise AlphabetError("product components have different alphabets")
        self.alphabet = self.parts[0].alphabet
        self.counters = sum(p.counters for p in self.parts)
        self.start = tuple(p.start for p in self.parts)
        self._accept = accept
        self.name = name

    def _moves(self, state, letter):
        options = []
        for part, s in zip(self.parts, state):
            ms = part.moves(s, letter)
            if not ms:
                return ()
            options.append(ms)
        out = []
        for combo in itertools.product(*options):
            target = tuple(t.target for t in combo)
            if self._alive is not None and not self._alive(target):
                continue
            guard = tuple(g for t in combo for g in t.guard)
            op = tuple(o for t in combo for o in t.op)
            out.append(Transition(guard, target, op))
        return out

    def accepting(self, state):
        if self._accept is not None:
            return self._accept(state)
        return all(p.accepting(s) for p, s in zip(self.parts, state))


DONE = "<done>"


class ConvolutionMachine(CounterMachine):
    """Reads 2-track columns; runs one machine per track.

    Once a track reads the pad letter its machine must be in an accepting
    state with its counters at zero, after which the track may only read
    padding.
    """

    def __init__(self, m1, m2, pad=PAD, name=""):
        super().__init__()
        self.m1, self.m2 = as_machine(m1), as_machine(m2)
        if self.m1.alphabet != self.m2.alphabet:
            raise AlphabetError("convolved machines have different alphabets")
        self.pad = pad
        base = Alphabet(tuple(sorted(self.m1.alphabet, key=repr)), pad)
        self.alphabet = frozenset(base.columns(2))
        self.counters = self.m1.counters + self.m2.counters
        self.start = (self.m1.start, self.m2.start)
        self.name = name

    def _track(self, m, s, x):
        k = m.counters
        if x == self.pad:
            if s == DONE:
                return (Transition((ANY,) * k, DONE, (NOP,) * k),)
            if m.accepting(s):
                return (Transition((ZERO,) * k, DONE, (NOP,) * k),)
            return ()
        if s == DONE:
            return ()
        return m.moves(s, x)

    def _moves(self, state, letter):
        x, y = letter
        left = self._track(self.m1, state[0], x)
        right = self._track(self.m2, state[1], y) if left else ()
        return [Transition(a.guard + b.guard, (a.target, b.target), a.op + b.op)
                for a in left for b in right]

    def accepting(self, state):
        s1, s2 = state
        return ((s1 == DONE or self.m1.accepting(s1)) and
                (s2 == DONE or self.m2.accepting(s2)))


class SwappedMachine(CounterMachine):
    """Reads 2-track columns with the tracks exchanged."""

    def __init__(self, m, name=""):
        super().__init__()
        self.inner = as_machine(m)
        self.alphabet = frozenset((y, x) for x, y in self.inner.alphabet)
        self.counters = self.inner.counters
        self.start = self.inner.start
        self.name = name

    def _moves(self, state, letter):
        x, y = letter
        return self.inner.moves(state, (y, x))

    def accepting(self, state):
        return self.inner.accepting(state)


class RestrictedMachine(CounterMachine):
    """The same machine over a subset of its alphabet."""

    def __init__(self, m, letters, name=""):
        super().__init__()
        self.inner = as_machine(m)
        self.alphabet = frozenset(letters)
        if not self.alphabet <= self.inner.alphabet:
            raise AlphabetError("restriction letters must lie in the alphabet")
        self.counters = self.inner.counters
        self.start = self.inner.start
        self.name = name or self.inner.name

    def _moves(self, state, letter):
        return self.inner.moves(state, letter)

    def accepting(self, state):
        return self.inner.accepting(state)


SINK = "<sink>"


class ResetSinkMachine(CounterMachine):
    """Totalises a machine: wherever no transition is enabled it moves to a
    rejecting sink and clears its counters.  Used for machines that run as
    one branch of a union, where a dead branch must not block the others."""

    def __init__(self, m, name=""):
        super().__init__()
        self.inner = as_machine(m)
        self.alphabet = self.inner.alphabet
        self.counters = self.inner.counters
        self.start = self.inner.start
        self.name = name or self.inner.name

    def _moves(self, state, letter):
        k = self.counters
        if state == SINK:
            return (Transition((ANY,) * k, SINK, (NOP,) * k),)
        moves = list(self.inner.moves(state, letter))
        for point in itertools.product((ZERO, POS), repeat=k):
            if not any(guards_overlap(point, t.guard) for t in moves):
                moves.append(Transition(point, SINK, (RESET,) * k))
        return moves

    def accepting(self, state):
        return state != SINK and self.inner.accepting(state)


def product_counter_dfa(m, d: "Dfa", name="") -> ProductMachine:
    """Intersection of a k-counter language with a regular one; k counters."""
    if as_machine(m).alphabet != d.alphabet:
        raise AlphabetError("machine and DFA alphabets differ")
    return ProductMachine([m, d], name=name)


def product_counter_counter(m1, m2, name="") -> ProductMachine:
    """Intersection of a k- and an l-counter language; k+l counters, the
    first k simulating ``m1``."""
    if as_machine(m1).alphabet != as_machine(m2).alphabet:
        raise AlphabetError("machine alphabets differ")
    return ProductMachine([m1, m2], name=name)


def conv_product(m1, m2, pad=PAD, name="") -> ConvolutionMachine:
    """Machine for the convolutions ⊗(u, v) with u in L(m1), v in L(m2)."""
    return ConvolutionMachine(m1, m2, pad, name=name)


def universal_machine(alphabet, name="") -> ExplicitCounterMachine:
    """0-counter machine accepting every word over ``alphabet``."""
    table = {(0, x): [((), 0, ())] for x in alphabet}
    return ExplicitCounterMachine(0, alphabet, {0}, 0, {0}, table, name=name)


@dataclass
class Step:
    letter: Hashable
    state: Hashable
    counters: tuple


@dataclass
class RunResult:
    accepted: bool
    state: Hashable
    counters: tuple
    trace: list
    reason: str = ""

    def __bool__(self):
        return self.accepted


def run(m, word, trace: bool = False) -> RunResult:
    """Run a counter machine (or DFA) from its start configuration.

    Raises :class:`AlphabetError` for letters outside the alphabet and
    :class:`DeterminismError` if two transitions are ever enabled at once.
    """
    m = as_machine(m)
    state = m.start
    counters = (0,) * m.counters
    steps = [Step(None, state, counters)] if trace else []
    for i, x in enumerate(word):
        if x not in m.alphabet:
            raise AlphabetError(f"letter {x!r} at position {i} is not in the alphabet")
        enabled = [t for t in m.moves(state, x) if guard_holds(t.guard, counters)]
        if len(enabled) > 1:
            raise DeterminismError(f"{len(enabled)} transitions enabled at position {i} in {state!r}")
        if not enabled:
            return RunResult(False, state, counters, steps, f"no transition at position {i}")
        t = enabled[0]
        counters = apply_op(t.op, counters)
        if any(c < 0 for c in counters):
            raise AutomatonError(f"counter went negative at position {i}")
        state = t.target
        if trace:
            steps.append(Step(x, state, counters))
    if not m.accepting(state):
        return RunResult(False, state, counters, steps, "ended in a non-accepting state")
    if any(counters):
        return RunResult(False, state, counters, steps, "counters not zero at the end")
    return RunResult(True, state, counters, steps)


run_counter_machine = run


def reachable_states(m, letters=None, limit: int | None = None) -> list:
    m = as_machine(m)
    letters = sorted(m.alphabet, key=repr) if letters is None else letters
    seen = {m.start}
    order = [m.start]
    queue = deque([m.start])
    while queue:
        s = queue.popleft()
        for x in letters:
            for t in m.moves(s, x):
                if t.target not in seen:
                    seen.add(t.target)
                    order.append(t.target)
                    queue.append(t.target)
                    if limit is not None and len(order) > limit:
                        raise AutomatonError(f"more than {limit} reachable states")
    return order


def audit_determinism(m, limit: int | None = None) -> list:
    """Static determinism check over the zero/positive predicate lattice.

    Returns the list of ``(state, letter, t1, t2)`` violations found among
    the reachable states.
    """
    m = as_machine(m)
    letters = sorted(m.alphabet, key=repr)
    bad = []
    for s in reachable_states(m, letters, limit):
        for x in letters:
            for t1, t2 in itertools.combinations(m.moves(s, x), 2):
                if guards_overlap(t1.guard, t2.guard):
                    bad.append((s, x, t1, t2))
    return bad


def count_accepted(m, n: int) -> int:
    """Number of accepted words of length exactly ``n``.

    Dynamic programming over configurations (state, counter vector); the
    counters are bounded by ``n`` so the configuration space is finite.
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    m = as_machine(m)
    letters = sorted(m.alphabet, key=repr)
    configs = {(m.start, (0,) * m.counters): 1}
    for _ in range(n):
        nxt: dict = {}
        for (s, cs), k in configs.items():
            for x in letters:
                for t in m.moves(s, x):
                    if guard_holds(t.guard, cs):
                        key = (t.target, apply_op(t.op, cs))
                        nxt[key] = nxt.get(key, 0) + k
        configs = nxt
    return sum(k for (s, cs), k in configs.items() if m.accepting(s) and not any(cs))


# ---------------------------------------------------------------------------
# finite automata


class Dfa:
    """A deterministic automaton with a (possibly lazy) transition function.

    ``delta(state, letter)`` returns the next state or ``None`` for a
    missing transition.  Results are memoised.
    """

    def __init__(self, alphabet, start, delta: Callable, accepting: Callable, name=""):
        self.alphabet = frozenset(alphabet)
        self.start = start
        self._delta = delta
        self._accepting = accepting
        self._cache: dict = {}
        self.name = name

    @classmethod
    def from_table(cls, alphabet, start, table: dict, finals, name=""):
        finals = frozenset(finals)
        return cls(alphabet, start, lambda q, x: table.get((q, x)), finals.__contains__, name)

    def step(self, state, letter):
        key = (state, letter)
        try:
            return self._cache[key]
        except KeyError:
            q = self._delta(state, letter)
            self._cache[key] = q
            return q

    def accepting(self, state) -> bool:
        return self._accepting(state)

    def accepts(self, word) -> bool:
        q = self.start
        for x in word:
            if x not in self.alphabet:
                raise AlphabetError(f"letter {x!r} is not in the alphabet")
            q = self.step(q, x)
            if q is None:
                return False
        return self.accepting(q)

    def completed(self) -> "Dfa":
        """The same language with a total transition function."""
        def delta(q, x):
            if q == SINK:
                return SINK
            r = self.step(q, x)
            return SINK if r is None else r
        return Dfa(self.alphabet, self.start, delta,
                   lambda q: q != SINK and self.accepting(q), self.name)

    def __repr__(self):
        return f"<Dfa {self.name}: {len(self.alphabet)} letters>"


def _check_same(d1, d2):
    if d1.alphabet != d2.alphabet:
        raise AlphabetError("automata have different alphabets")


def complement(d: Dfa, name="") -> Dfa:
    c = d.completed()
    return Dfa(c.alphabet, c.start, c.step, lambda q: not c.accepting(q), name)


def _product(d1: Dfa, d2: Dfa, both: bool, name) -> Dfa:
    # a missing transition is a dead component; the product only dies when
    # the combination can no longer accept
    _check_same(d1, d2)

    def delta(q, x):
        r1 = None if q[0] is None else d1.step(q[0], x)
        r2 = None if q[1] is None else d2.step(q[1], x)
        if (r1 is None or r2 is None) if both else (r1 is None and r2 is None):
            return None
        return (r1, r2)

    def acc(q):
        a1 = q[0] is not None and d1.accepting(q[0])
        a2 = q[1] is not None and d2.accepting(q[1])
        return (a1 and a2) if both else (a1 or a2)

    return Dfa(d1.alphabet, (d1.start, d2.start), delta, acc, name)


def intersect(d1: Dfa, d2: Dfa, name="") -> Dfa:
    return _product(d1, d2, True, name)


def union(d1: Dfa, d2: Dfa, name="") -> Dfa:
    return _product(d1, d2, False, name)


class Nfa:
    """Nondeterministic automaton with epsilon moves.

    ``edges`` are ``(source, letters, target)`` where ``letters`` is any
    container of letters; ``eps`` are ``(source, target)`` pairs.
    """

    def __init__(self, alphabet, starts, edges, finals, eps=(), name=""):
        self.alphabet = frozenset(alphabet)
        self.starts = frozenset(starts)
        self.finals = frozenset(finals)
        self.name = name
        self._out: dict = {}
        for src, letters, dst in edges:
            self._out.setdefault(src, []).append((letters, dst))
        self._eps: dict = {}
        for src, dst in eps:
            self._eps.setdefault(src, set()).add(dst)

    def closure(self, states) -> frozenset:
        seen = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in self._eps.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(self, states, letter) -> frozenset:
        out = set()
        for s in states:
            for letters, dst in self._out.get(s, ()):
                if letter in letters:
                    out.add(dst)
        return self.closure(out)

    def accepts(self, word) -> bool:
        cur = self.closure(self.starts)
        for x in word:
            if x not in self.alphabet:
                raise AlphabetError(f"letter {x!r} is not in the alphabet")
            cur = self.step(cur, x)
            if not cur:
                return False
        return bool(cur & self.finals)


def _nonempty_step(step):
    def delta(q, x):
        r = step(q, x)
        return r if r else None
    return delta


def determinize(n: Nfa, name="") -> Dfa:
    """Subset construction, evaluated lazily.  The empty subset is left out,
    so a dead subset shows up as a missing transition."""
    return Dfa(n.alphabet, n.closure(n.starts), _nonempty_step(n.step),
               lambda q: bool(q & n.finals), name or n.name)


class _ConcatNfa:
    def __init__(self, d1: Dfa, d2: Dfa, name=""):
        self.alphabet = d1.alphabet
        self.d1, self.d2 = d1, d2
        self.name = name
        self.starts = frozenset([(0, d1.start)])
        self.finals = frozenset()

    def closure(self, states):
        out = set(states)
        for tag, q in states:
            if tag == 0 and self.d1.accepting(q):
                out.add((1, self.d2.start))
        return frozenset(out)

    def step(self, states, letter):
        out = set()
        for tag, q in states:
            r = (self.d1 if tag == 0 else self.d2).step(q, letter)
            if r is not None:
                out.add((tag, r))
        return self.closure(out)

    def is_final(self, states):
        return any(tag == 1 and self.d2.accepting(q) for tag, q in states)


def concat(d1: Dfa, d2: Dfa, name="") -> Dfa:
    """Concatenation L(d1)·L(d2), determinised lazily."""
    _check_same(d1, d2)
    n = _ConcatNfa(d1, d2, name)
    return Dfa(n.alphabet, n.closure(n.starts), _nonempty_step(n.step), n.is_final, name)


def pattern_nfa(alphabet, segments, name="") -> Nfa:
    """NFA for a sequence of letter classes.

    Each segment is ``(letters, '1')`` for exactly one letter from the class
    or ``(letters, '*')`` / ``(letters, '+')`` for repetition.
    """
    edges = []
    eps = []
    state = 0
    for letters, rep in segments:
        if rep == "1":
            edges.append((state, letters, state + 1))
        elif rep == "*":
            edges.append((state, letters, state))
            eps.append((state, state + 1))
        elif rep == "+":
            edges.append((state, letters, state + 1))
            edges.append((state + 1, letters, state + 1))
        else:
            raise ValueError(f"unknown repetition {rep!r}")
        state += 1
    return Nfa(alphabet, {0}, edges, {state}, eps, name)


def union_nfa(nfas: Sequence[Nfa], name="") -> Nfa:
    """Disjoint union of NFAs (states are tagged by position)."""
    alphabet = nfas[0].alphabet
    edges, eps, starts, finals = [], [], set(), set()
    for i, n in enumerate(nfas):
        if n.alphabet != alphabet:
            raise AlphabetError("NFA alphabets differ")
        starts |= {(i, s) for s in n.starts}
        finals |= {(i, s) for s in n.finals}
        for src, outs in n._out.items():
            edges.extend(((i, src), letters, (i, dst)) for letters, dst in outs)
        for src, dsts in n._eps.items():
            eps.extend(((i, src), (i, d)) for d in dsts)
    return Nfa(alphabet, starts, edges, finals, eps, name)


def shifted_copy_dfa(b: Sequence, alphabet: Alphabet, name="") -> Dfa:
    """DFA over 2-track columns accepting exactly {⊗(w, bw) : w ∈ Λ*}.

    The states after the first ``p = |b|`` columns are the length-p strings
    ``s``: the last p letters read on the top track, still owed to the
    bottom track.  From ``s`` the column ``(x, y)`` is legal iff ``y`` is the
    first letter of ``s``, moving to ``s[1:] + x``.  Once the top track is
    padded the bottom track must spell out the remaining owed letters.
    Top words shorter than ``p`` are handled by the same owed-letters
    bookkeeping during the prefix.
    """
    b = tuple(b)
    p = len(b)
    if p == 0:
        raise ValueError("the shift word must be nonempty")
    pad = alphabet.pad
    columns = frozenset(alphabet.columns(2))

    # states: ("pre", top-prefix) while reading the first p columns,
    # ("S", s) for a full window, ("tail", owed) once the top is padded.
    def delta(q, col):
        x, y = col
        kind, s = q
        if kind == "pre":
            i = len(s)
            if y != b[i]:
                return None
            if x == pad:
                return ("tail", b[i + 1:] + s)
            s = s + (x,)
            return ("S", s) if i + 1 == p else ("pre", s)
        if kind == "S":
            if y != s[0]:
                return None
            return ("tail", s[1:]) if x == pad else ("S", s[1:] + (x,))
        if x != pad or not s or y != s[0]:
            return None
        return ("tail", s[1:])

    return Dfa(columns, ("pre", ()), delta, lambda q: q == ("tail", ()), name)


def explore(d: Dfa, limit: int | None = None) -> tuple[list, dict]:
    """Reachable states and transition table of a DFA (missing = reject)."""
    letters = sorted(d.alphabet, key=repr)
    order, seen, table = [d.start], {d.start}, {}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        for x in letters:
            r = d.step(q, x)
            if r is None:
                continue
            table[(q, x)] = r
            if r not in seen:
                seen.add(r)
                order.append(r)
                queue.append(r)
                if limit is not None and len(order) > limit:
                    raise AutomatonError(f"more than {limit} reachable states")
    return order, table


# ---------------------------------------------------------------------------
# DOT export


def _fmt_letter(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_fmt_letter(y) for y in x) + ")"
    return str(x)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(m, limit: int | None = 20000, state_names: Callable | None = None,
           max_letters: int | None = 12) -> str:
    """Graphviz text for a counter machine or DFA.

    Edges sharing source, target, guard and op are merged and labelled with
    their letter list, cut to ``max_letters`` letters plus a count.  Node
    numbering follows breadth-first discovery, so the output is
    deterministic for a given machine.
    """
    mm = as_machine(m)
    letters = sorted(mm.alphabet, key=repr)
    states = reachable_states(mm, letters, limit)
    index = {s: i for i, s in enumerate(states)}
    name = state_names or (lambda s: f"s{index[s]}")
    lines = [f'digraph "{_dot_escape(mm.name or "machine")}" {{', "  rankdir=LR;"]
    for s in states:
        shape = "doublecircle" if mm.accepting(s) else "circle"
        lines.append(f'  n{index[s]} [label="{_dot_escape(name(s))}", shape={shape}];')
    lines.append(f"  start [shape=point]; start -> n{index[mm.start]};")
    for s in states:
        grouped: dict = {}
        for x in letters:
            for t in mm.moves(s, x):
                grouped.setdefault((t.target, t.guard, t.op), []).append(x)
        for (target, guard, op), xs in grouped.items():
            shown = xs if max_letters is None else xs[:max_letters]
            label = " ".join(_fmt_letter(x) for x in shown)
            if len(shown) < len(xs):
                label += f" ... ({len(xs)} letters)"
            if any(g != ANY for g in guard):
                label += " [" + ",".join(guard) + "]"
            if any(o != NOP for o in op):
                label += " {" + ",".join(op) + "}"
            lines.append(f'  n{index[s]} -> n{index[target]} [label="{_dot_escape(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
