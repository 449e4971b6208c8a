"""Binary trees, tree pair diagrams and their caret-type encoding.

A tree is a nested tuple: a caret is ``(left, right)`` and a missing child
(a leaf) is ``None``.  Trees are hashable, immutable values.  A tree pair
``TreePair(domain, range)`` with equal caret counts represents an element of
Thompson's group F; ``multiply(a, b)`` returns the reduced diagram of
``a·b``, where ``g·x0`` rotates the domain tree of ``g`` at its root.

Caret types, read in infix order:

``r``  the root;
``e``  any other caret on the left or right spine;
``(``  interior, left child of an interior caret or child of a spine
       caret, with a right child (``a`` without one);
``b``  interior, right child of an interior caret, with a right child
       (``)`` without one).
"""
from __future__ import annotations

import json
from collections import deque
from functools import lru_cache
from typing import NamedTuple, Optional

from .automata import ConvWord, convolve, deconvolve

Tree = Optional[tuple]

ROOT, EXT = "r", "e"
OPEN, CLOSE, A, B = "(", ")", "a", "b"
SIGMA_T = (EXT, ROOT, OPEN, CLOSE, A, B)
SIGMA_INT = (OPEN, CLOSE, A, B)
EXTERIOR = frozenset((EXT, ROOT))

MAX_ENUM_CARETS = 12
MAX_RADIUS = 10


class TreeWordError(ValueError):
    """A caret word that does not encode a tree."""

    def __init__(self, condition, message, position=None):
        self.condition = condition
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"condition ({condition}) violated{where}: {message}")


# ---------------------------------------------------------------------------
# trees


def caret_count(t: Tree) -> int:
    if t is None:
        return 0
    return 1 + caret_count(t[0]) + caret_count(t[1])


def left_vine(n: int) -> Tree:
    t = None
    for _ in range(n):
        t = (t, None)
    return t


def right_vine(n: int) -> Tree:
    t = None
    for _ in range(n):
        t = (None, t)
    return t


def infix_order(t: Tree) -> list[str]:
    """Carets in infix order, each named by its path from the root
    (``"L"``/``"R"`` steps; the root is ``""``)."""
    out: list[str] = []

    def walk(node, path):
        if node is None:
            return
        walk(node[0], path + "L")
        out.append(path)
        walk(node[1], path + "R")

    walk(t, "")
    return out


def subtree_at(t: Tree, path: str) -> Tree:
    for step in path:
        t = t[0] if step == "L" else t[1]
    return t


_CHILD_KINDS = {
    "root": ("lspine", "rspine"),
    "lspine": ("lspine", "col1"),
    "rspine": ("col1", "rspine"),
    "col1": ("col1", "col2"),
    "col2": ("col1", "col2"),
}


def _labels(t: Tree, kind: str, out: list) -> None:
    # kind: root, a spine caret, col1 (left child of an interior caret or
    # child of a spine caret) or col2 (right child of an interior caret)
    left, right = t
    lk, rk = _CHILD_KINDS[kind]
    if left is not None:
        _labels(left, lk, out)
    if kind == "root":
        out.append(ROOT)
    elif kind in ("lspine", "rspine"):
        out.append(EXT)
    elif kind == "col1":
        out.append(OPEN if right is not None else A)
    else:
        out.append(B if right is not None else CLOSE)
    if right is not None:
        _labels(right, rk, out)


def encode_tree(t: Tree) -> str:
    """Caret-type word of a tree, in infix order.

    >>> encode_tree(right_vine(3))
    'ree'
    """
    if t is None:
        raise ValueError("a tree has at least one caret")
    out: list[str] = []
    _labels(t, "root", out)
    return "".join(out)


def encode_interior(t: Tree) -> str:
    """Word of an interior subtree hanging from a spine caret (``""`` if
    empty)."""
    if t is None:
        return ""
    out: list[str] = []
    _labels(t, "col1", out)
    return "".join(out)


def _parse_col1(w: str, i: int, top: bool):
    """Parse a left-spine chain of column-1 carets starting at ``i``.

    Returns ``(subtree, next position)``; stops at the end of the word or,
    below the top level, at a ``b`` or ``)`` which belongs to the caller.
    """
    t = None
    n = len(w)
    while i < n:
        x = w[i]
        if x == A:
            t = (t, None)
            i += 1
        elif x == OPEN:
            right, i = _parse_col2(w, i + 1)
            t = (t, right)
        elif x in (B, CLOSE):
            if top:
                raise TreeWordError(1, f"{x!r} read at a balanced position", i)
            return t, i
        else:
            raise TreeWordError(4, f"{x!r} is not an interior caret type", i)
    return t, i


def _parse_col2(w: str, i: int):
    """Parse the right subtree of a ``(``: a right-spine chain of column-2
    carets ending with the matching ``)``."""
    spine = []
    while True:
        left, i = _parse_col1(w, i, top=False)
        if i >= len(w):
            raise TreeWordError(2, "unbalanced '(' (missing ')')", len(w))
        spine.append((left, w[i]))
        i += 1
        if w[i - 1] == CLOSE:
            break
    t = None
    for left, _ in reversed(spine):
        t = (left, t)
    return t, i


def decode_interior(w: str) -> Tree:
    """Inverse of :func:`encode_interior`; raises :class:`TreeWordError`
    with the violated condition (1: letter at a balanced position,
    2: unbalanced)."""
    t, i = _parse_col1(w, 0, top=True)
    return t


def check_tree_word(w: str) -> None:
    """Raise :class:`TreeWordError` naming the first violated tree-word
    condition: (1) starts with e/r, (2) ends with e/r, (3) exactly one r,
    (4) every interior block is an interior-subtree word."""
    if not w:
        raise TreeWordError(1, "empty word")
    for i, x in enumerate(w):
        if x not in SIGMA_T:
            raise TreeWordError(4, f"{x!r} is not a caret type", i)
    if w[0] not in EXTERIOR:
        raise TreeWordError(1, "word must start with 'e' or 'r'", 0)
    if w[-1] not in EXTERIOR:
        raise TreeWordError(2, "word must end with 'e' or 'r'", len(w) - 1)
    if w.count(ROOT) != 1:
        raise TreeWordError(3, f"found {w.count(ROOT)} 'r' letters")
    for start, block in _blocks(w):
        try:
            decode_interior(block)
        except TreeWordError as exc:
            pos = None if exc.position is None else start + exc.position
            raise TreeWordError(4, f"block {block!r}: {exc}", pos) from None


def _blocks(w: str):
    """Maximal interior blocks between exterior letters, with offsets."""
    i, n = 0, len(w)
    while i < n:
        if w[i] in EXTERIOR:
            i += 1
            continue
        j = i
        while j < n and w[j] not in EXTERIOR:
            j += 1
        yield i, w[i:j]
        i = j


def is_tree_word(w: str) -> bool:
    try:
        check_tree_word(w)
    except TreeWordError:
        return False
    return True


def decode_tree(w: str) -> Tree:
    """The unique tree whose caret word is ``w``.

    Exterior letters before ``r`` form the left spine, deepest first, each
    followed by its (interior) right subtree; exterior letters after ``r``
    form the right spine, each preceded by its left subtree.
    """
    check_tree_word(w)
    # split into exterior letters and the interior block following/preceding
    ext_positions = [i for i, x in enumerate(w) if x in EXTERIOR]
    root_at = w.index(ROOT)
    blocks = {}
    for start, block in _blocks(w):
        blocks[start] = decode_interior(block)

    def block_after(i):
        return blocks.get(i + 1)

    def block_before(i):
        j = i - 1
        while j >= 0 and w[j] not in EXTERIOR:
            j -= 1
        return blocks.get(j + 1) if j + 1 < i else None

    left = None
    for i in ext_positions:
        if i >= root_at:
            break
        left = (left, block_after(i))
    right = None
    for i in reversed(ext_positions):
        if i <= root_at:
            break
        right = (block_before(i), right)
    return (left, right)


def exposed(t: Tree) -> list[bool]:
    """Per infix caret: whether it has no children."""
    out: list[bool] = []

    def walk(node):
        if node is None:
            return
        walk(node[0])
        out.append(node[0] is None and node[1] is None)
        walk(node[1])

    walk(t)
    return out


# ---------------------------------------------------------------------------
# tree pairs


class TreePair(NamedTuple):
    domain: Tree
    range: Tree

    def __str__(self):
        return pair_text(self)


def _check_pair(p: TreePair):
    if p.domain is None or p.range is None:
        raise ValueError("tree pair trees must have at least one caret")
    if caret_count(p.domain) != caret_count(p.range):
        raise ValueError("tree pair trees must have equal caret counts")


def pair_words(p: TreePair) -> tuple[str, str]:
    _check_pair(p)
    return encode_tree(p.domain), encode_tree(p.range)


def pair_text(p: TreePair) -> str:
    """Text form ``TOP,BOTTOM``; also the canonical key of a reduced pair."""
    top, bottom = pair_words(p)
    return f"{top},{bottom}"


def encode_pair(p: TreePair) -> ConvWord:
    top, bottom = pair_words(p)
    return convolve([top, bottom])


def pair_columns(p: TreePair) -> tuple:
    """The convolution ν(p) as a tuple of (top, bottom) columns."""
    top, bottom = pair_words(p)
    return tuple(zip(top, bottom))


def split_pair_text(text: str) -> tuple[str, str]:
    parts = text.strip().split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'TOP,BOTTOM', got {text!r}")
    top, bottom = (s.strip() for s in parts)
    for name, w in (("top", top), ("bottom", bottom)):
        for i, x in enumerate(w):
            if x not in SIGMA_T:
                raise ValueError(f"{name} word: {x!r} at position {i} is not a caret type")
    if len(top) != len(bottom):
        raise ValueError(f"top and bottom differ in length ({len(top)} vs {len(bottom)})")
    return top, bottom


def decode_pair(c) -> TreePair:
    """Tree pair from a convolution, a ``TOP,BOTTOM`` string or a pair of
    words.  Raises ``ValueError`` on padding or a length mismatch."""
    if isinstance(c, ConvWord):
        if c.tracks != 2:
            raise ValueError("a tree pair convolution has two tracks")
        if any(c.pad in col for col in c.columns):
            raise ValueError("padding inside a tree pair convolution")
        top, bottom = ("".join(w) for w in deconvolve(c))
    elif isinstance(c, str):
        top, bottom = split_pair_text(c)
    else:
        top, bottom = c
        if len(top) != len(bottom):
            raise ValueError("top and bottom differ in length")
    return TreePair(decode_tree(top), decode_tree(bottom))


def is_reduced(p: TreePair) -> bool:
    if caret_count(p.domain) == 1:
        return True
    return not any(x and y for x, y in zip(exposed(p.domain), exposed(p.range)))


def _prune(t: Tree, drop: set, counter: list) -> Tree:
    if t is None:
        return None
    left = _prune(t[0], drop, counter)
    idx = counter[0]
    counter[0] += 1
    right = _prune(t[1], drop, counter)
    if idx in drop:
        return None
    return (left, right)


def reduce(p: TreePair) -> TreePair:
    """Remove caret pairs exposed at the same infix index in both trees,
    repeatedly, down to the unique reduced diagram."""
    d, r = p
    while caret_count(d) > 1:
        drop = {i for i, (x, y) in enumerate(zip(exposed(d), exposed(r))) if x and y}
        if not drop:
            break
        if len(drop) == caret_count(d):
            drop.discard(0)
        d, r = _prune(d, drop, [0]), _prune(r, drop, [0])
    return TreePair(d, r)


def union_tree(s: Tree, t: Tree) -> Tree:
    """Smallest tree containing both ``s`` and ``t`` as rooted subtrees."""
    if s is None:
        return t
    if t is None:
        return s
    return (union_tree(s[0], t[0]), union_tree(s[1], t[1]))


def _leaf_extras(small: Tree, big: Tree, out: list) -> None:
    # subtree of ``big`` hanging at each leaf of ``small``, in leaf order
    if small is None:
        out.append(big)
        return
    if big is None:
        raise ValueError("target does not contain the tree")
    _leaf_extras(small[0], big[0], out)
    _leaf_extras(small[1], big[1], out)


def _graft(t: Tree, extras: list, it: list) -> Tree:
    if t is None:
        x = extras[it[0]]
        it[0] += 1
        return x
    return (_graft(t[0], extras, it), _graft(t[1], extras, it))


def common_expand(p: TreePair, target: Tree) -> TreePair:
    """Equivalent (unreduced) pair whose range tree is ``target``.

    Every caret added below leaf ℓ of the range is added below leaf ℓ of the
    domain.
    """
    extras: list = []
    _leaf_extras(p.range, target, extras)
    return TreePair(_graft(p.domain, extras, [0]), target)


def inverse(p: TreePair) -> TreePair:
    return TreePair(p.range, p.domain)


def multiply(a: TreePair, b: TreePair) -> TreePair:
    """Reduced diagram of the product ``a·b``.

    ``b`` is placed on the left: refine so that ``b.range`` and ``a.domain``
    coincide, then return ``(b.domain', a.range')`` reduced.
    """
    middle = union_tree(b.range, a.domain)
    left = common_expand(b, middle)
    right = common_expand(inverse(a), middle)
    return reduce(TreePair(left.domain, right.domain))


IDENTITY = TreePair((None, None), (None, None))


def identity() -> TreePair:
    return IDENTITY


_GENERATOR_WORDS = {
    "x0": ("re", "er"),
    "x1": ("ree", "rae"),
}


@lru_cache(maxsize=None)
def generator(name: str) -> TreePair:
    """``x0``, ``x1`` or their inverses ``x0inv``, ``x1inv``."""
    key = name.replace("^-1", "inv")
    if key in _GENERATOR_WORDS:
        return decode_pair(_GENERATOR_WORDS[key])
    if key.endswith("inv") and key[:-3] in _GENERATOR_WORDS:
        return inverse(generator(key[:-3]))
    raise ValueError(f"unknown generator {name!r}")


GENERATORS = ("x0", "x1", "x0inv", "x1inv")


def parse_word(word: str) -> list[str]:
    """Split ``"x0 x1^-1 x0inv"`` (spaces optional) into generator names."""
    out = []
    s = word.replace(" ", "").replace("⁻¹", "^-1")
    while s:
        for tok, name in (("x0^-1", "x0inv"), ("x1^-1", "x1inv"), ("x0inv", "x0inv"),
                          ("x1inv", "x1inv"), ("x0", "x0"), ("x1", "x1")):
            if s.startswith(tok):
                out.append(name)
                s = s[len(tok):]
                break
        else:
            raise ValueError(f"cannot parse generator word at {s!r}")
    return out


def evaluate(word, start: TreePair = IDENTITY) -> TreePair:
    """Right-multiply ``start`` by the generators of ``word`` in order."""
    names = parse_word(word) if isinstance(word, str) else list(word)
    g = start
    for name in names:
        g = multiply(g, generator(name))
    return g


def x_n(n: int) -> TreePair:
    """x_n = x0^-(n-1) x1 x0^(n-1) for n ≥ 1, and x0 for n = 0."""
    if n == 0:
        return generator("x0")
    return evaluate(["x0inv"] * (n - 1) + ["x1"] + ["x0"] * (n - 1))


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple:
    """All trees with ``n`` carets (Catalan(n) of them)."""
    if n < 0:
        raise ValueError("caret count must be nonnegative")
    if n > MAX_ENUM_CARETS:
        raise ValueError(f"refusing to enumerate trees with more than {MAX_ENUM_CARETS} carets")
    if n == 0:
        return (None,)
    out = []
    for k in range(n):
        for left in enumerate_trees(k):
            for right in enumerate_trees(n - 1 - k):
                out.append((left, right))
    return tuple(out)


def enumerate_pairs(n: int):
    trees = enumerate_trees(n)
    for d in trees:
        for r in trees:
            yield TreePair(d, r)


def enumerate_reduced_pairs(n: int) -> list[TreePair]:
    if n < 1:
        raise ValueError("caret count must be at least 1")
    trees = enumerate_trees(n)
    ex = {t: exposed(t) for t in trees}
    if n == 1:
        return [IDENTITY]
    out = []
    for d in trees:
        ed = ex[d]
        for r in trees:
            if not any(x and y for x, y in zip(ed, ex[r])):
                out.append(TreePair(d, r))
    return out


def ball(radius: int) -> dict:
    """Reduced pairs within word distance ``radius`` of the identity over
    {x0, x1, x0inv, x1inv}, keyed by text form, mapped to
    ``(pair, distance)`` in breadth-first order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius > MAX_RADIUS:
        raise ValueError(f"refusing to explore beyond radius {MAX_RADIUS}")
    gens = [generator(s) for s in GENERATORS]
    found = {pair_text(IDENTITY): (IDENTITY, 0)}
    frontier = deque([IDENTITY])
    for dist in range(1, radius + 1):
        nxt = deque()
        for g in frontier:
            for s in gens:
                h = multiply(g, s)
                key = pair_text(h)
                if key not in found:
                    found[key] = (h, dist)
                    nxt.append(h)
        frontier = nxt
    return found


# ---------------------------------------------------------------------------
# alternative label sets and serialisation


_TO_MURRAY = {OPEN: "nN", CLOSE: "iI", A: "nI", B: "iN"}
_FROM_MURRAY = {v: k for k, v in _TO_MURRAY.items()}


def to_murray(w: str) -> str:
    """Translate an interior caret word to caret/leaf labels n, i, N, I."""
    try:
        return "".join(_TO_MURRAY[x] for x in w)
    except KeyError as exc:
        raise ValueError(f"{exc.args[0]!r} is not an interior caret type") from None


def from_murray(m: str) -> str:
    if len(m) % 2:
        raise ValueError("a caret/leaf label word has even length")
    out = []
    for i in range(0, len(m), 2):
        pair = m[i:i + 2]
        if pair not in _FROM_MURRAY:
            raise ValueError(f"cannot pair {pair!r} at position {i}")
        out.append(_FROM_MURRAY[pair])
    return "".join(out)


def translate_murray(w: str, inverse: bool = False) -> str:
    """``to_murray``, or ``from_murray`` when ``inverse`` is set."""
    return from_murray(w) if inverse else to_murray(w)


# adjacent interior carets: where the second sits relative to the first
RIGHT_CHILD = "right child"
RIGHT_THEN_LEFT = "leftmost below right child"
LEFT_CHILD = "parent (first is its left child)"
LEFT_THEN_RIGHT = "ancestor (first is rightmost in its left subtree)"

PLACEMENT_CHART = {
    (x, y): (RIGHT_CHILD if y in (B, CLOSE) else RIGHT_THEN_LEFT) if x in (OPEN, B)
    else (LEFT_CHILD if x == A else LEFT_THEN_RIGHT)
    for x in SIGMA_INT for y in SIGMA_INT
}


def placement(p1: str, p2: str) -> str | None:
    """Relation between two carets given by root paths, if it is one of
    the four chart relations."""
    if p2 == p1 + "R":
        return RIGHT_CHILD
    if p2.startswith(p1 + "R") and len(p2) > len(p1) + 1 and set(p2[len(p1) + 1:]) == {"L"}:
        return RIGHT_THEN_LEFT
    if p1 == p2 + "L":
        return LEFT_CHILD
    if p1.startswith(p2 + "L") and len(p1) > len(p2) + 1 and set(p1[len(p2) + 1:]) == {"R"}:
        return LEFT_THEN_RIGHT
    return None


def tree_to_obj(t: Tree):
    if t is None:
        return None
    return {"left": tree_to_obj(t[0]), "right": tree_to_obj(t[1])}


def tree_from_obj(obj) -> Tree:
    if obj is None:
        return None
    if not isinstance(obj, dict) or set(obj) - {"left", "right"}:
        raise ValueError(f"bad tree node {obj!r}")
    return (tree_from_obj(obj.get("left")), tree_from_obj(obj.get("right")))


def pair_to_json(p: TreePair) -> str:
    return json.dumps({"domain": tree_to_obj(p.domain), "range": tree_to_obj(p.range)},
                      sort_keys=True)


def pair_from_json(text: str) -> TreePair:
    obj = json.loads(text)
    if not isinstance(obj, dict) or "domain" not in obj or "range" not in obj:
        raise ValueError("expected an object with 'domain' and 'range'")
    p = TreePair(tree_from_obj(obj["domain"]), tree_from_obj(obj["range"]))
    _check_pair(p)
    return p
