"""Bracketed words: full binary trees with labelled leaves.

A word is a fully parenthesised product of generators. Its length is
the number of leaves; distinct bracketings of the same letters are
distinct words. Word identity is purely structural: no algebra
identities (commutativity, anticommutativity, ...) are ever applied at
the word level.

Besides construction, enumeration and evaluation, this module carries
the word-structure toolkit used by the length analysis:

* ``subwords``: every factor of every multiplication inside a word,
  plus the word itself;
* sprout/supporting sequences: repeatedly split off the shorter factor
  of the last multiplication and recurse into the longer one (ties
  branch, so a word can have several analyses);
* ``is_k_bounded``: does some sprout sequence stay within length k;
* ``step_sigma``: the least t such that a subword of length
  ``l - 2t - 1`` exists.

The length-0 word ``1`` (for unital algebras) is a dedicated singleton
``unit_word()``; it never appears inside products built here.

Text form: leaves print as their label (integers as ``g<i>``), nodes as
``(left right)`` with a single space, e.g. ``((x y) (z y))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping, Optional

from .errors import ParseError, PreconditionError, ValidationError

Label = object  # int generator index (>= 1) or str variable name


class Word:
    """Immutable binary tree; use :func:`leaf`, :func:`node`, :func:`unit_word`."""

    __slots__ = ("label", "left", "right", "length", "_hash", "_subs", "_kb")

    def __init__(self, label, left, right, length):
        self.label = label
        self.left = left
        self.right = right
        self.length = length
        if left is None:
            h = hash((label, length))
        else:
            h = hash((left._hash, right._hash))
        self._hash = h
        self._subs = None
        self._kb = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None and self.length == 1

    @property
    def is_unit(self) -> bool:
        return self.length == 0

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Word):
            return NotImplemented
        if self._hash != other._hash or self.length != other.length:
            return False
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if a._hash != b._hash or a.length != b.length or a.label != b.label:
                return False
            if a.left is None:
                if b.left is not None:
                    return False
            else:
                if b.left is None:
                    return False
                stack.append((a.left, b.left))
                stack.append((a.right, b.right))
        return True

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def __reduce__(self):
        return (_from_nested, (to_nested(self),))

    def leaves(self) -> Iterator:
        """Leaf labels in left-to-right order."""
        stack = [self]
        while stack:
            w = stack.pop()
            if w.left is None:
                if w.length == 1:
                    yield w.label
            else:
                stack.append(w.right)
                stack.append(w.left)

    def labels(self) -> frozenset:
        return frozenset(self.leaves())


def leaf(label) -> Word:
    if isinstance(label, int):
        if label < 1:
            raise ValidationError(f"generator index must be >= 1, got {label}", module="words")
    elif not isinstance(label, str) or not label:
        raise ValidationError(f"bad leaf label {label!r}", module="words")
    return Word(label, None, None, 1)


def node(left: Word, right: Word) -> Word:
    return Word(None, left, right, left.length + right.length)


_UNIT = Word("1", None, None, 0)


def unit_word() -> Word:
    """The empty product, length 0; evaluates to the unit of a unital algebra."""
    return _UNIT


def to_nested(w: Word):
    if w.left is None:
        return w.label if w.length == 1 else ("1",)
    return (to_nested(w.left), to_nested(w.right))


def _from_nested(obj) -> Word:
    if isinstance(obj, tuple):
        if obj == ("1",):
            return _UNIT
        return node(_from_nested(obj[0]), _from_nested(obj[1]))
    return leaf(obj)


def format_word(w: Word) -> str:
    if w.length == 0:
        return "1"
    if w.left is None:
        return f"g{w.label}" if isinstance(w.label, int) else w.label
    return f"({format_word(w.left)} {format_word(w.right)})"


def parse_word(text: str) -> Word:
    """Inverse of :func:`format_word`. ``g<i>`` parses back to the integer label."""
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(f"unexpected end of word {text!r}", module="words")
        tok = toks[pos]
        pos += 1
        return tok

    def parse_one() -> Word:
        tok = take()
        if tok == "(":
            lw = parse_one()
            rw = parse_one()
            if take() != ")":
                raise ParseError(f"missing ')' in {text!r}", module="words")
            return node(lw, rw)
        if tok == ")":
            raise ParseError(f"unexpected ')' in {text!r}", module="words")
        if tok == "1":
            return _UNIT
        if len(tok) > 1 and tok[0] == "g" and tok[1:].isdigit():
            return leaf(int(tok[1:]))
        return leaf(tok)

    w = parse_one()
    if pos != len(toks):
        raise ParseError(f"trailing tokens in {text!r}", module="words")
    return w


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def word_count(num_gens: int, length: int) -> int:
    """Number of distinct words with ``length`` leaves over ``num_gens`` letters."""
    return catalan(length - 1) * num_gens**length


def enumerate_shapes(length: int) -> list:
    """All bracketing shapes with the given leaf count (leaves labelled 1).

    Order: split position of the outermost product ascending (left
    factor of size 1 first), recursively; this is the bracketing order
    used by :func:`enumerate_words`.
    """
    if length < 1:
        raise ValidationError("length must be >= 1", module="words")
    table: list = [None, [leaf(1)]]
    for n in range(2, length + 1):
        row = []
        for s in range(1, n):
            for lw in table[s]:
                for rw in table[n - s]:
                    row.append(node(lw, rw))
        table.append(row)
    return table[length]


def _relabel(shape: Word, labels, pos: int = 0):
    if shape.left is None:
        return leaf(labels[pos]), pos + 1
    lw, pos = _relabel(shape.left, labels, pos)
    rw, pos = _relabel(shape.right, labels, pos)
    return node(lw, rw), pos


def enumerate_words(num_gens: int, length: int) -> Iterator[Word]:
    """All words with ``length`` leaves labelled from ``1..num_gens``.

    Deterministic stream, bracketing-major: for each shape (see
    :func:`enumerate_shapes`) all leaf labelings in lexicographic
    order. Yields ``word_count(num_gens, length)`` words. Resource
    limits are the caller's responsibility.
    """
    if num_gens < 1:
        raise ValidationError("need at least one generator", module="words")
    from itertools import product

    gens = range(1, num_gens + 1)
    for shape in enumerate_shapes(length):
        for labels in product(gens, repeat=length):
            w, _ = _relabel(shape, labels)
            yield w


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(algebra, assignment: Mapping, w: Word, _memo: Optional[dict] = None):
    """Evaluate ``w`` in ``algebra`` with leaves mapped through ``assignment``.

    Repeated subtrees are evaluated once. The unit word needs a unital
    algebra; a leaf without an assignment is an error.
    """
    memo = {} if _memo is None else _memo
    cached = memo.get(w)
    if cached is not None:
        return cached
    if w.left is None:
        if w.length == 0:
            if not algebra.unital:
                raise PreconditionError(
                    "the unit word needs a unital algebra", module="words"
                )
            value = algebra.unit
        else:
            try:
                value = assignment[w.label]
            except KeyError:
                raise PreconditionError(
                    f"no assignment for generator {w.label!r}", module="words"
                )
    else:
        value = algebra.multiply(
            evaluate(algebra, assignment, w.left, memo),
            evaluate(algebra, assignment, w.right, memo),
        )
    memo[w] = value
    return value


# ---------------------------------------------------------------------------
# Subwords
# ---------------------------------------------------------------------------


def subwords(w: Word) -> frozenset:
    """All subwords of ``w``: factors of the multiplications inside it, and
    ``w`` itself. The proper subwords of a product are exactly the
    subwords of its two factors, which is what the recursion computes.
    """
    cached = w._subs
    if cached is not None:
        return cached
    if w.left is None:
        result = frozenset((w,))
    else:
        result = subwords(w.left) | subwords(w.right) | {w}
    w._subs = result
    return result


def subword_lengths(w: Word) -> frozenset:
    return frozenset(s.length for s in subwords(w))


# ---------------------------------------------------------------------------
# Sprout sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SproutAnalysis:
    """One sprout/supporting decomposition of a word.

    ``sprout[j]`` and ``supporting[j]`` are the two factors of the last
    multiplication of ``supporting[j-1]`` (of the analysed word for
    j = 0), with ``len(sprout[j]) <= len(supporting[j])``; the analysis
    ends when both have length 1.
    """

    sprout: tuple
    supporting: tuple

    @property
    def l_sprout(self) -> tuple:
        return tuple(w.length for w in self.sprout)

    def to_json(self) -> dict:
        return {
            "sprout": [format_word(w) for w in self.sprout],
            "supporting": [format_word(w) for w in self.supporting],
            "l_sprout": list(self.l_sprout),
        }


def _splits(w: Word):
    """Admissible (shorter, longer) assignments of the top factors.

    A genuine tie (equal lengths >= 2, structurally different factors)
    branches; a tie of two leaves keeps the left factor as the sprout
    element, and structurally equal factors collapse to one choice.
    """
    u, v = w.left, w.right
    if u.length < v.length:
        return ((u, v),)
    if v.length < u.length:
        return ((v, u),)
    if u.length == 1 or u == v:
        return ((u, v),)
    return ((u, v), (v, u))


def sprout_analyses(w: Word) -> list:
    """The complete set of sprout analyses of ``w`` over all tie-break
    choices, in deterministic order. Requires length >= 2."""
    if w.length < 2:
        raise PreconditionError("sprout sequences need a word of length >= 2", module="words")

    def go(x: Word):
        out = []
        for a, b in _splits(x):
            if b.length == 1:
                out.append(((a,), (b,)))
            else:
                for tail_s, tail_p in go(b):
                    out.append(((a,) + tail_s, (b,) + tail_p))
        return out

    seen = set()
    result = []
    for s, p in go(w):
        key = (s, p)
        if key not in seen:
            seen.add(key)
            result.append(SproutAnalysis(s, p))
    return result


def _kb(w: Word, k: int) -> bool:
    # True iff some l-sprout sequence of w stays <= k; cached per word.
    cache = w._kb
    if cache is None:
        cache = w._kb = {}
    hit = cache.get(k)
    if hit is not None:
        return hit
    ok = False
    for a, b in _splits(w):
        if a.length <= k and (b.length == 1 or _kb(b, k)):
            ok = True
            break
    cache[k] = ok
    return ok


def _kb_witness(w: Word, k: int):
    for a, b in _splits(w):
        if a.length > k:
            continue
        if b.length == 1:
            return (a,), (b,)
        if _kb(b, k):
            s, p = _kb_witness(b, k)
            return (a,) + s, (b,) + p
    raise AssertionError("witness requested for an unbounded word")


def is_k_bounded(w: Word, k: int) -> tuple[bool, Optional[SproutAnalysis]]:
    """Whether some l-sprout sequence of ``w`` has all entries <= k.

    Length-1 words are k-bounded by convention (no witness). When the
    answer is True and the word has length >= 2, a witnessing analysis
    is returned.
    """
    if k < 2:
        raise ValidationError(f"k must be >= 2, got {k}", module="words")
    if w.length <= 1:
        return True, None
    if not _kb(w, k):
        return False, None
    s, p = _kb_witness(w, k)
    return True, SproutAnalysis(s, p)


def step_sigma(w: Word) -> Optional[int]:
    """Least t >= 0 such that ``w`` has a subword of length ``l - 2t - 1``.

    Requires length >= 2. Returns None if no such t exists; every word
    of length >= 2 has a length-1 subword (and, at odd length, an
    even-length factor), so in practice the value is always present.
    """
    if w.length < 2:
        raise PreconditionError("the step function needs a word of length >= 2", module="words")
    lengths = subword_lengths(w)
    l = w.length
    t = 0
    while l - 2 * t - 1 >= 1:
        if l - 2 * t - 1 in lengths:
            return t
        t += 1
    return None
